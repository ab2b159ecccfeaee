#include "flat/periodicity.hpp"

#include <map>

namespace flat {

std::string to_string(PointStatus s) {
  switch (s) {
    case PointStatus::periodic: return "periodic";
    case PointStatus::non_periodic: return "non_periodic";
    default: return "unknown";
  }
}

std::string to_string(CertificateKind c) {
  switch (c) {
    case CertificateKind::singular: return "singular";
    case CertificateKind::minus_id_fixed: return "minus_id_fixed";
    case CertificateKind::irrational_split: return "irrational_split";
    default: return "none";
  }
}

std::vector<RationalAngle> default_directions(const TranslationSurface& M) {
  long N = M.N() > 0 ? M.N() : 1;
  std::vector<RationalAngle> out;
  for (long j = 0; j < N; ++j) out.emplace_back(Rational(j, N));
  return out;
}

bool fixed_by_minus_id(const TranslationSurface& M, long cone) {
  long N = M.N();
  if (N <= 0 || N % 2) return false;
  return M.act(Dihedral::rotation(N, N / 2), cone) == cone;
}

namespace {

class Classifier {
 public:
  Classifier(const TranslationSurface& M, std::optional<double> bound) : M_(M), bound_(bound) {}

  const DecompositionResult& decomposition(const RationalAngle& d) {
    std::string k = d.str();
    auto it = cache_.find(k);
    if (it == cache_.end()) it = cache_.emplace(k, cylinder_decomposition(M_, d, bound_)).first;
    return it->second;
  }

  PeriodicityVerdict classify(long cone, const std::vector<RationalAngle>& directions) {
    PeriodicityVerdict v;
    v.cone = cone;
    if (M_.cone_points().at(cone).is_singular()) {
      v.status = PointStatus::periodic;
      v.certificate = CertificateKind::singular;
      return v;
    }
    if (fixed_by_minus_id(M_, cone)) {
      v.status = PointStatus::periodic;
      v.certificate = CertificateKind::minus_id_fixed;
      return v;
    }
    SurfacePoint p = vertex_point(M_, cone);
    for (const auto& d : directions) {
      const DecompositionResult& r = decomposition(d);
      const auto* D = std::get_if<Decomposition>(&r);
      if (!D) {
        v.attempts.push_back({d, "not_shown_periodic"});
        continue;
      }
      HeightSplit s;
      try {
        s = height_split(M_, *D, p);
      } catch (const DomainError&) {
        v.attempts.push_back({d, "boundary"});
        continue;
      }
      if (s.rational) {
        v.attempts.push_back({d, "rational_split"});
        continue;
      }
      v.attempts.push_back({d, "irrational_split"});
      v.status = PointStatus::non_periodic;
      v.certificate = CertificateKind::irrational_split;
      v.split = SplitCertificate{d, s.h1, s.h, s.cylinder};
      return v;
    }
    return v;
  }

 private:
  const TranslationSurface& M_;
  std::optional<double> bound_;
  std::map<std::string, DecompositionResult> cache_;
};

}  // namespace

PeriodicityVerdict classify_point(const TranslationSurface& M, long cone, const std::vector<RationalAngle>& directions,
                                  std::optional<double> length_bound) {
  return Classifier(M, length_bound).classify(cone, directions);
}

std::vector<PeriodicityVerdict> classify_points(const TranslationSurface& M, const std::vector<RationalAngle>& directions,
                                                std::optional<double> length_bound) {
  Classifier c(M, length_bound);
  std::vector<PeriodicityVerdict> out;
  for (size_t i = 0; i < M.cone_points().size(); ++i) out.push_back(c.classify(static_cast<long>(i), directions));
  return out;
}

bool replay_certificate(const TranslationSurface& M, const PeriodicityVerdict& v) {
  switch (v.certificate) {
    case CertificateKind::singular:
      return v.status == PointStatus::periodic && M.cone_points().at(v.cone).k > 1;
    case CertificateKind::minus_id_fixed: {
      if (v.status != PointStatus::periodic || M.N() % 2) return false;
      // the copy rotated by pi must be the exact negative chart, with the
      // corner of p landing on the same point class
      Dihedral h = Dihedral::rotation(M.N(), M.N() / 2);
      const EdgeRef& c = M.cone_points().at(v.cone).corners.front();
      const Face& f = M.faces()[c.face];
      if (!f.label) return false;
      size_t g = M.face_of(h * *f.label);
      const auto& a = f.polygon.vertices();
      const auto& b = M.faces()[g].polygon.vertices();
      if (a.size() != b.size()) return false;
      for (size_t k = 0; k < a.size(); ++k)
        if (!(b[k] == -a[k])) return false;
      return M.corner_class(g, c.edge) == v.cone;
    }
    case CertificateKind::irrational_split: {
      if (v.status != PointStatus::non_periodic || !v.split) return false;
      auto r = cylinder_decomposition(M, v.split->direction, std::nullopt);
      const auto* D = std::get_if<Decomposition>(&r);
      if (!D) return false;
      HeightSplit s = height_split(M, *D, vertex_point(M, v.cone));
      return !s.rational && s.h1 == v.split->h1 && s.h == v.split->h;
    }
    default:
      return v.status == PointStatus::unknown;
  }
}

}  // namespace flat
