#pragma once

#include "sparsevr/persistence.hpp"

#include <string>
#include <vector>

namespace sparsevr {

/// True iff every point of `a` lies within L1 distance r of some point of `b`
/// in the same dimension, or of the diagonal (L1 distance d - b). Points with
/// infinite death only match infinite-death points, at cost |birth difference|.
bool l1_offset_contained(const PersistenceDiagram& a, const PersistenceDiagram& b, double r);

/// Smallest r such that every point of `a` is within L1 distance r of `b` or
/// the diagonal (+inf when an essential class has no partner).
double l1_offset_radius(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Bottleneck distance (L-infinity ground metric), maximised over dimensions.
/// Essential classes are matched among themselves by birth; a mismatch in
/// their number gives +inf.
double bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b);

/// Two-sided L1 offset containment at radius r, the form of the additive
/// guarantee between a subsample's diagram and the full one.
bool additive_band_check(const PersistenceDiagram& subsample, const PersistenceDiagram& full,
                         double r);

/// A witness for a band matching: index into the first diagram's points,
/// index into the second (or -1 for the diagonal).
struct BandMatch {
  long first = -1;
  long second = -1;
};

struct BandResult {
  bool pass = false;
  std::vector<BandMatch> matching;
};

/// Multiplicative band with factor 1 - 2 eps: every point (b, d) of the
/// relaxed diagram pairs with a point (b', d') of the exact diagram such that
/// b' in [(1-2eps) b, b] and d' in [(1-2eps) d, d]; leftover relaxed points
/// need (1-2eps) d <= b and leftover exact points d' <= b' / (1-2eps).
BandResult multiplicative_band(const PersistenceDiagram& relaxed, const PersistenceDiagram& exact,
                               double epsilon);
bool multiplicative_band_check(const PersistenceDiagram& relaxed, const PersistenceDiagram& exact,
                               double epsilon);

struct ComparisonRow {
  std::string check;
  std::string param;
  double value = 0.0;
  bool pass = false;
};

/// Result of comparing two diagrams; `rows` is what the CSV block carries.
struct ComparisonReport {
  double offset_a_in_b = 0.0;
  double offset_b_in_a = 0.0;
  double bottleneck = 0.0;
  std::vector<ComparisonRow> rows;
  std::vector<BandMatch> band_witness;

  bool pass() const;
  std::string to_text() const;
};

}  // namespace sparsevr
