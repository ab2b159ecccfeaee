#include <mpfr.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "flat/expression.hpp"
#include "flat/flow.hpp"
#include "flat/periodicity.hpp"
#include "flat/search.hpp"

using namespace flat;

namespace {

struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::vector<long> cones_of_vertex(const TranslationSurface& M, size_t v) {
  std::vector<long> out;
  for (size_t i = 0; i < M.cone_points().size(); ++i)
    if (M.cone_points()[i].source_vertex == static_cast<long>(v)) out.push_back(static_cast<long>(i));
  return out;
}

size_t vertex_with_angle(const Polygon& P, const Rational& a) {
  for (size_t k = 0; k < P.angles().size(); ++k)
    if (P.angles()[k].multiple == a) return k;
  throw DomainError("no vertex with angle " + a.str());
}

std::vector<HeightSplit> splits_over(const TranslationSurface& M, const RationalAngle& theta, size_t vertex) {
  std::vector<HeightSplit> out;
  auto r = cylinder_decomposition(M, theta);
  const auto* D = std::get_if<Decomposition>(&r);
  if (!D) return out;
  for (long z : cones_of_vertex(M, vertex)) {
    try {
      out.push_back(height_split(M, *D, vertex_point(M, z)));
    } catch (const DomainError&) {
    }
  }
  return out;
}

// Euler characteristic of the unfolding from the angles alone.
long chi_from_angles(const Polygon& Q) {
  long N = 1;
  for (const auto& a : Q.angles()) N = std::lcm(N, a.denominator());
  long s = 0;
  for (const auto& a : Q.angles()) s += (N / a.denominator()) * (a.numerator() - 1);
  return -s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exact height ratios at non-periodic points.
Check exact_values() {
  Check c;
  {
    Polygon P = make_entry("5a").polygon;
    TranslationSurface M = unfold(P);
    bool found = false;
    for (const auto& s : splits_over(M, RationalAngle(0), vertex_with_angle(P, Rational(1, 3)))) {
      Real r = s.h1 / s.h;
      if (r * r == Real(Rational(1, 3)) && !is_rational(r)) found = true;
    }
    c.expect(found, "5a: no split with r^2 = 1/3 at the pi/3 point");
  }
  {
    Polygon P = make_entry("5c").polygon;
    TranslationSurface M = unfold(P);
    bool found = false;
    for (const auto& s : splits_over(M, RationalAngle(11, 18), vertex_with_angle(P, Rational(1, 3)))) {
      if (!(s.h1 == Real(Rational(1, 2)))) continue;
      const Real& h = s.h;
      bool cubic = Real(8) * h * h * h - Real(18) * h + Real(9) == Real(0);
      bool screen = true;
      for (Rational q : {Rational(1), Rational(3), Rational(1, 2), Rational(1, 4), Rational(3, 2), Rational(3, 4)})
        if (Rational(8) * q * q * q - Rational(18) * q + Rational(9) == Rational(0)) screen = false;
      if (cubic && screen && !is_rational(h)) found = true;
    }
    c.expect(found, "5c: no split with h1 = 1/2 and 8h^3 - 18h + 9 = 0");
  }
  {
    Polygon P = make_entry("5b").polygon;
    TranslationSurface M = unfold(P);
    size_t v3 = vertex_with_angle(P, Rational(1, 3));
    bool golden = false;
    std::set<std::string> seen;
    for (const auto& d : default_directions(M))
      for (const auto& s : splits_over(M, d, v3)) {
        Real r = s.h1 / s.h;
        Real t = Real(2) * r + Real(1);
        if (t * t == Real(5)) golden = true;
        seen.insert(r.decimal(12));
      }
    std::string list;
    for (const auto& x : seen) list += (list.empty() ? "" : ", ") + x;
    c.expect(golden, "5b pi/3 point: (2r + 1)^2 = 5 in no standard direction; ratios seen: " + list);

    size_t v5 = vertex_with_angle(P, Rational(1, 5));
    bool close = false;
    for (const auto& s : splits_over(M, RationalAngle(1, 6), v5)) {
      Real r = s.h1 / s.h;
      if (is_rational(r)) continue;
      // (5 + sqrt(75 - 30 sqrt 5)) / 10 at 256 bits
      mpfr_t ref, x;
      mpfr_inits2(256, ref, x, (mpfr_ptr)0);
      mpfr_sqrt_ui(ref, 5, MPFR_RNDN);
      mpfr_mul_ui(ref, ref, 30, MPFR_RNDN);
      mpfr_ui_sub(ref, 75, ref, MPFR_RNDN);
      mpfr_sqrt(ref, ref, MPFR_RNDN);
      mpfr_add_ui(ref, ref, 5, MPFR_RNDN);
      mpfr_div_ui(ref, ref, 10, MPFR_RNDN);
      mpfr_set_str(x, r.decimal(60).c_str(), 10, MPFR_RNDN);
      mpfr_sub(x, x, ref, MPFR_RNDN);
      mpfr_abs(x, x, MPFR_RNDN);
      if (mpfr_cmp_d(x, 1e-30) < 0) close = true;
      mpfr_clears(ref, x, (mpfr_ptr)0);
    }
    c.expect(close, "5b pi/5 point: no irrational split within 1e-30 of (5 + sqrt(75 - 30 sqrt 5))/10");
  }
  for (const char* f : {"2", "6"})
    for (long n : {5, 7}) {
      CatalogEntry e = make_entry(f, n);
      TranslationSurface M = unfold(e.polygon);
      auto dirs = default_directions(M);
      for (size_t v : e.facts.non_periodic_vertices)
        for (long z : cones_of_vertex(M, v)) {
          PeriodicityVerdict p = classify_point(M, z, dirs);
          std::string id = std::string(f) + "/" + std::to_string(n) + " class " + std::to_string(z);
          c.expect(p.status == PointStatus::non_periodic, id + " not certified non-periodic");
          c.expect(replay_certificate(M, p), id + " certificate does not replay");
        }
    }
  return c;
}

Check topology() {
  Check c;
  std::vector<std::pair<std::string, std::optional<long>>> members;
  for (long n = 5; n <= 8; ++n) members.push_back({"2", n});
  for (const char* f : {"5a", "5b", "5c"}) members.push_back({f, std::nullopt});
  for (long n : {5, 6}) members.push_back({"6", n});
  std::map<std::string, long> expected = {{"2/8", 2}, {"2/5", 2}, {"5a", 3}, {"5c", 3}, {"5b", 4}};
  for (const auto& [f, n] : members) {
    TranslationSurface M = unfold(make_entry(f, n).polygon);
    Topology t = genus(M);
    long sum = 0;
    for (const auto& p : M.cone_points()) sum += p.k - 1;
    long chi = t.V - t.E + t.F;
    std::string id = n ? f + "/" + std::to_string(*n) : f;
    c.expect(sum % 2 == 0 && chi % 2 == 0, id + ": odd count");
    c.expect(-chi == sum, id + ": V - E + F gives genus " + std::to_string((2 - chi) / 2) +
                              ", cone angles give " + std::to_string(1 + sum / 2));
    c.expect(chi == chi_from_angles(M.base().value()), id + ": chi disagrees with the angle formula");
    if (expected.count(id)) c.expect(1 + sum / 2 == expected[id], id + ": genus " + std::to_string(1 + sum / 2));
  }
  return c;
}

Polygon tri(long a1, long b1, long a2, long b2, long a3, long b3) {
  return triangle_from_angles(RationalAngle(a1, b1), RationalAngle(a2, b2), RationalAngle(a3, b3));
}

Check riemann_hurwitz() {
  Check c;
  Polygon square = make_entry("10", 1).polygon;
  Polygon right5 = tri(1, 2, 1, 5, 3, 10);
  Polygon equi = tri(1, 3, 1, 3, 1, 3);
  std::vector<std::pair<std::string, std::function<Tiling()>>> corpus = {
      {"square", [&] { return verify_tiling(square, {}); }},
      {"domino", [&] { return verify_tiling(square, {{0, 1}}); }},
      {"L tromino", [&] { return verify_tiling(square, {{0, 1}, {0, 2}}); }},
      {"2x2 square", [&] { return verify_tiling(square, {{0, 1}, {0, 2}, {1, 2}}); }},
      {"isosceles from two right triangles", [&] { return verify_tiling(right5, {{0, 2}}); }},
      {"kite", [&] { return verify_tiling(right5, {{0, 1}}); }},
      {"rhombus of four right triangles", [&] { return verify_tiling(right5, {{0, 2}, {0, 0}, {2, 2}}); }},
      {"equilateral rhombus", [&] { return verify_tiling(equi, {{0, 0}}); }},
      {"equilateral trapezoid", [&] { return verify_tiling(equi, {{0, 0}, {0, 1}}); }},
      {"equilateral triangle of four", [&] { return verify_tiling(equi, {{0, 0}, {0, 1}, {0, 2}}); }},
  };
  // configurations reached by the search steps
  for (const auto& [f, n, K] : std::vector<std::tuple<std::string, std::optional<long>, long>>{
           {"2", 5, 8}, {"5a", std::nullopt, 10}, {"6", 5, 6}}) {
    CatalogEntry e = make_entry(f, n);
    SearchReport r = search_appropriate(e, {K, 1});
    for (size_t i = 0; i < r.rejected.size(); ++i) {
      auto motions = r.rejected[i].node.motions;
      corpus.push_back({"search " + f + " " + r.rejected[i].tag + " #" + std::to_string(i),
                        [e, motions] { return verify_motions(e.polygon, motions); }});
    }
  }
  long covers = 0;
  for (const auto& [name, make] : corpus) {
    Tiling t = make();
    CoverAnalysis a;
    try {
      a = analyze_cover(t);
    } catch (const DomainError& err) {
      c.notes.push_back(name + ": not a cover (" + err.what() + ")");
      continue;
    }
    ++covers;
    long n = static_cast<long>(t.size());
    c.expect(a.m > 0 && n % a.m == 0 && a.d == n / a.m, name + ": d is not n/m");
    long ram = 0;
    for (const auto& p : a.points) ram += p.preimages * (p.e - 1);
    long chi_Q = chi_from_angles(t.outline), chi_P = chi_from_angles(t.base);
    c.expect(chi_Q == a.d * chi_P - ram, name + ": chi_Q = " + std::to_string(chi_Q) + ", d chi_P - ram = " +
                                             std::to_string(a.d * chi_P - ram));
  }
  c.expect(covers >= 10, "only " + std::to_string(covers) + " covers in the corpus");
  c.notes.push_back(std::to_string(covers) + " covers checked");
  // genus 2, degree 3, one point with e = 3
  long chi = 3 * -2 - (3 - 1);
  c.expect(riemann_hurwitz_chi(3, -2, 2) == chi && (2 - chi) / 2 == 5, "genus 2 degree 3 e = 3 does not give genus 5");
  for (long chi_base = -20; chi_base <= 2; chi_base += 2)
    c.expect(riemann_hurwitz_chi(2, chi_base, 1) % 2 != 0, "double cover with one simple branch point has even chi");
  return c;
}

std::vector<std::optional<long>> family_range(const FamilyInfo& f, long count) {
  if (!f.needs_n) return {std::nullopt};
  std::vector<std::optional<long>> ns;
  for (long n = f.n_min; static_cast<long>(ns.size()) < count; ++n)
    if (!f.odd_only || n % 2) ns.push_back(n);
  return ns;
}

Check screens() {
  Check c;
  for (const auto& f : catalog_families())
    for (const auto& n : family_range(f, 6)) {
      CatalogEntry e = make_entry(f.id, n);
      if (e.polygon.N() % 2 == 0)
        c.expect(minus_id_screen(e.polygon).in_group,
                 f.id + (n ? "/" + std::to_string(*n) : "") + ": even N without -Id");
    }
  std::vector<std::pair<std::string, std::optional<long>>> members;
  for (long n = 3; n <= 8; ++n) members.push_back({"1", n});
  for (long n = 4; n <= 10; n += 2) members.push_back({"2", n});
  for (long n = 3; n <= 8; ++n) members.push_back({"3", n});
  for (long n = 4; n <= 10; n += 2) members.push_back({"6", n});
  members.push_back({"8", std::nullopt});
  long singular_only = 0;
  for (const auto& [f, n] : members) {
    CatalogEntry e = make_entry(f, n);
    TranslationSurface M = unfold(e.polygon);
    std::string id = n ? f + "/" + std::to_string(*n) : f;
    for (size_t v = 0; v < e.polygon.size(); ++v)
      for (long z : cones_of_vertex(M, v)) {
        PeriodicityVerdict p = classify_point(M, z, {});
        // a singular point is periodic whether or not -Id lies in G_P
        bool ok = p.status == PointStatus::periodic &&
                  (p.certificate == CertificateKind::singular || fixed_by_minus_id(M, z));
        c.expect(ok, id + " vertex " + std::to_string(v) + " (angle " + e.polygon.angles()[v].str() + ", class " +
                         std::to_string(z) + "): " + to_string(p.status) + ", certificate " +
                         to_string(p.certificate));
        if (ok && p.certificate == CertificateKind::singular && !fixed_by_minus_id(M, z)) ++singular_only;
      }
  }
  c.notes.push_back(std::to_string(singular_only) + " singular vertex points periodic without -Id in G_P");
  return c;
}

Check searches() {
  Check c;
  auto timed = [&](const std::string& id, const CatalogEntry& e, SearchOptions o) {
    auto t0 = std::chrono::steady_clock::now();
    SearchReport r = search_appropriate(e, o);
    double s = seconds_since(t0);
    c.expect(s <= 60, id + ": " + std::to_string(s) + " s");
    c.expect(r.outcome == "none_found", id + ": outcome " + r.outcome);
    std::ostringstream os;
    os << id << ": " << r.outcome << ", " << r.nodes << " nodes, " << s << " s";
    c.notes.push_back(os.str());
    return r;
  };
  for (long K = 1; K <= 12; ++K) {
    SearchReport r = timed("7 K=" + std::to_string(K), make_entry("7"), {K, 1});
    c.expect(r.nodes == 0 && r.prunes.count("angle_budget"), "7: not closed by the angle bound");
  }
  for (const auto& [f, n] : std::vector<std::pair<const char*, long>>{{"9a", 7}, {"9a", 9}, {"9b", 5}, {"9b", 7}})
    timed(std::string(f) + "/" + std::to_string(n) + " K=8", make_entry(f, n), {8, 1});
  {
    CatalogEntry e = make_entry("2", 5);
    SearchReport r = timed("2/5 K=8", e, {8, 1});
    Polygon rhombus = verify_tiling(e.polygon, {{0, 2}, {0, 0}, {2, 2}}).outline.normalized();
    bool found = false;
    for (const auto& x : r.rejected)
      if (x.tag == "two_branch_points" && x.node.motions.size() == 4 && x.outline.normalized().key() == rhombus.key())
        found = true;
    c.expect(found, "2/5: rhombus of four copies not among nodes rejected for two branch points");
  }
  {
    SearchReport r = timed("5a K=10", make_entry("5a"), {10, 1});
    bool fired = r.prunes.count("infinite_forcing") > 0;
    std::string tags;
    for (const auto& [t, k] : r.prunes) tags += " " + t + ":" + std::to_string(k);
    c.expect(fired, "5a K=10: infinite-forcing prune did not fire (prunes" + tags + ")");
  }
  return c;
}

Cyclotomic random_cyclotomic(std::mt19937& rng, long n) {
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 6);
  std::vector<Rational> c;
  for (long j = 0; j < euler_phi(n); ++j) c.emplace_back(coef(rng), den(rng));
  return Cyclotomic::from_coefficients(n, c);
}

Check properties() {
  Check c;
  std::mt19937 rng(2024);
  const long conductors[] = {3, 4, 5, 7, 8, 9, 12, 15, 20};
  std::uniform_int_distribution<int> pick(0, 8);
  long bad = 0;
  for (int i = 0; i < 10000; ++i) {
    Cyclotomic a = random_cyclotomic(rng, conductors[pick(rng)]), b = random_cyclotomic(rng, conductors[pick(rng)]),
               d = random_cyclotomic(rng, conductors[pick(rng)]);
    if (!((a + b) + d == a + (b + d))) ++bad;
    if (!(a * (b + d) == a * b + a * d)) ++bad;
    if (!(a * b == b * a)) ++bad;
    if (!(a - a).is_zero()) ++bad;
    if (!a.is_zero() && !((b / a) * a == b)) ++bad;
  }
  c.expect(bad == 0, std::to_string(bad) + " ring law failures");
  bad = 0;
  std::uniform_int_distribution<int> num(-90, 90), den(1, 45);
  for (int i = 0; i < 10000; ++i) {
    Rational q(num(rng), den(rng));
    Real s = Real::sin_pi(q), co = Real::cos_pi(q);
    if (!(s * s + co * co == Real(1))) ++bad;
    if (std::fabs(s.to_double() - std::sin(q.to_double() * M_PI)) > 1e-12) ++bad;
  }
  c.expect(bad == 0, std::to_string(bad) + " Pythagorean failures");

  std::vector<Polygon> polygons;
  for (const auto& f : catalog_families())
    for (const auto& n : family_range(f, 3)) polygons.push_back(make_entry(f.id, n).polygon);
  for (const Polygon& P : polygons) {
    Point sum;
    for (const auto& e : P.edges()) sum += Cyclotomic::exp_pi_i(e.direction.multiple) * e.length.value();
    c.expect(sum.is_zero(), "polygon " + P.key() + " does not close");
  }
  long decompositions = 0;
  for (size_t i = 0; i < polygons.size(); ++i) {
    const Polygon& P = polygons[i];
    if (P.N() > 16) continue;
    TranslationSurface M = unfold(P);
    for (size_t f = 0; f < M.pairing().size(); ++f)
      for (size_t k = 0; k < M.pairing()[f].size(); ++k) {
        EdgeRef e = M.pairing()[f][k];
        EdgeRef back = M.pairing()[e.face][e.edge];
        c.expect(back.face == f && back.edge == k && !(e.face == f && e.edge == k),
                 "pairing is not a fixed-point-free involution on " + P.key());
      }
    Real area = Real(static_cast<long>(M.faces().size())) * P.area();
    auto dirs = default_directions(M);
    for (size_t j = 0; j < dirs.size() && j < 4; ++j) {
      auto r = cylinder_decomposition(M, dirs[j]);
      const auto* D = std::get_if<Decomposition>(&r);
      if (!D) continue;
      ++decompositions;
      Real s;
      for (const auto& cyl : D->cylinders) {
        Real sub;
        for (size_t k : cyl.subcylinders) sub += D->subcylinders[k].height * D->subcylinders[k].circumference;
        c.expect(sub == cyl.area(), "cylinder area differs from its subcylinders on " + P.key());
        s += cyl.area();
      }
      c.expect(s == area && D->total_area == area, "areas not conserved on " + P.key() + " in " + dirs[j].str());
    }
    if (P.N() <= 12) {
      auto v = classify_points(M, dirs);
      for (const auto& g : Dihedral::all(M.N()))
        for (const auto& x : v)
          c.expect(v[M.act(g, x.cone)].status == x.status, "verdict not constant on an orbit of " + P.key());
    }
  }
  c.notes.push_back(std::to_string(polygons.size()) + " polygons, " + std::to_string(decompositions) +
                    " decompositions");
  return c;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Check()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "exact values at non-periodic points", exact_values},
      {2, "genus by two routes", topology},
      {3, "Riemann-Hurwitz on verified tilings", riemann_hurwitz},
      {4, "rotation screen and periodic vertices", screens},
      {5, "bounded appropriate-cover search", searches},
      {6, "property suites", properties},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    Check c;
    try {
      c = cr.run();
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double s = seconds_since(t0);
    if (cr.id == 1 && s >= 10) c.failures.push_back("took " + std::to_string(s) + " s");
    bool ok = c.failures.empty();
    if (!ok) ++failed;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << cr.id << ": " << cr.name << " (" << std::fixed
              << std::setprecision(1) << s << " s)\n";
    for (const auto& f : c.failures) std::cout << "    - " << f << "\n";
    for (const auto& n : c.notes) std::cout << "    . " << n << "\n";
  }
  return failed == 0 ? 0 : 1;
}
