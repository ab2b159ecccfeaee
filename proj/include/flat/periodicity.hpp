#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flat/flow.hpp"

namespace flat {

enum class PointStatus { periodic, non_periodic, unknown };
enum class CertificateKind { none, singular, minus_id_fixed, irrational_split };

std::string to_string(PointStatus s);
std::string to_string(CertificateKind c);

struct SplitCertificate {
  RationalAngle direction;
  Real h1, h;
  size_t cylinder = 0;
};

// Outcome of one direction tried for a point.
struct DirectionAttempt {
  RationalAngle direction;
  std::string outcome;  // "rational_split", "irrational_split", "boundary", "not_shown_periodic"
};

struct PeriodicityVerdict {
  long cone = -1;
  PointStatus status = PointStatus::unknown;
  CertificateKind certificate = CertificateKind::none;
  std::optional<SplitCertificate> split;
  std::vector<DirectionAttempt> attempts;
};

// Horizontal plus the reflection-axis directions j*pi/N.
std::vector<RationalAngle> default_directions(const TranslationSurface& M);

PeriodicityVerdict classify_point(const TranslationSurface& M, long cone, const std::vector<RationalAngle>& directions,
                                  std::optional<double> length_bound = std::nullopt);

// All point classes of M, sharing decompositions across points.
std::vector<PeriodicityVerdict> classify_points(const TranslationSurface& M, const std::vector<RationalAngle>& directions,
                                                std::optional<double> length_bound = std::nullopt);

// Rotation by pi inside G_P fixes the point class.
bool fixed_by_minus_id(const TranslationSurface& M, long cone);

// Re-derives the certificate from scratch; true when it still holds.
bool replay_certificate(const TranslationSurface& M, const PeriodicityVerdict& v);

}  // namespace flat
