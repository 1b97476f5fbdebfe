#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qwalk/coin.hpp"

namespace qwalk {

enum class GeometryKind { Cycle, Wire, TruncatedLine };

std::string_view to_string(GeometryKind kind);

/// A finite ring of D sites. Site index i in [0, D) sits at lattice coordinate
/// x = i + origin_offset. Wires and truncated lines are rings too: a wire is
/// closed off by reflecting end coins, a truncated line is large enough that
/// nothing reaches the seam within its horizon.
class Geometry {
 public:
  static Geometry cycle(int size, int origin_offset = 0);
  /// Wire with x_min = -((size - 1) / 2): odd D = 2L+3 spans [-L-1, L+1],
  /// even D = 2L+2 spans [-L, L+1].
  static Geometry wire(int size);
  /// Ring around x = 0 exact for `horizon` steps from an initial state supported
  /// in |x| <= support_radius.
  static Geometry truncated_line(int horizon, int support_radius = 0);
  /// Same, but with an explicit size (validated against the light cone).
  static Geometry truncated_line(int size, int horizon, int support_radius);

  GeometryKind kind() const { return kind_; }
  int size() const { return size_; }
  int origin_offset() const { return origin_offset_; }
  int horizon() const { return horizon_; }

  int x_min() const { return origin_offset_; }
  int x_max() const { return origin_offset_ + size_ - 1; }
  int coordinate(int index) const { return index + origin_offset_; }
  /// Index of coordinate x, wrapped onto the ring.
  int index(int x) const;
  bool contains(int x) const { return x >= x_min() && x <= x_max(); }

  bool operator==(const Geometry&) const = default;

 private:
  Geometry(GeometryKind kind, int size, int origin_offset, int horizon);

  GeometryKind kind_ = GeometryKind::Cycle;
  int size_ = 0;
  int origin_offset_ = 0;
  int horizon_ = 0;
};

/// Which construction produced a coin field.
enum class Scenario { Custom, Homogeneous, Interface, CycleTwoSegment, Defect, Wire, RandomBulkWire };

std::string_view to_string(Scenario scenario);

/// Immutable per-site coin assignment. Coin matrices are computed once at construction.
class CoinField {
 public:
  CoinField(Geometry geometry, std::vector<CoinParams> coins, Scenario scenario = Scenario::Custom);

  static CoinField homogeneous(const Geometry& geometry, const CoinParams& coin);
  /// theta_minus for x < 0, theta_plus for x >= 0.
  static CoinField interface(const Geometry& geometry, double theta_minus, double theta_plus,
                             CoinPhases phases = {});
  /// Cycle of `size` sites; sites 0..segment-1 carry theta_a, the rest theta_b.
  static CoinField cycle_two_segment(int size, int segment, double theta_a, double theta_b,
                                     CoinPhases phases = {});
  /// theta_a at x = defect_x, theta_b elsewhere.
  static CoinField defect(const Geometry& geometry, double theta_a, double theta_b,
                          CoinPhases phases = {}, int defect_x = 0);
  /// Wire with bulk theta and reflecting ends (|end| must be pi/2).
  static CoinField wire(int size, double theta, double left_end = -0.5 * kPi,
                        double right_end = -0.5 * kPi, CoinPhases phases = {});
  /// Wire with explicit bulk angles (size - 2 values, left to right).
  static CoinField wire(std::span<const double> bulk_thetas, double left_end = -0.5 * kPi,
                        double right_end = -0.5 * kPi, CoinPhases phases = {});
  /// Wire whose bulk angles are drawn independently and uniformly from [theta_lo, theta_hi).
  static CoinField random_bulk_wire(int size, double theta_lo, double theta_hi, std::uint64_t seed,
                                    double left_end = -0.5 * kPi, double right_end = -0.5 * kPi,
                                    CoinPhases phases = {});

  const Geometry& geometry() const { return geometry_; }
  Scenario scenario() const { return scenario_; }
  std::span<const CoinParams> coins() const { return coins_; }
  const CoinParams& coin(int index) const { return coins_[static_cast<std::size_t>(index)]; }
  const Coin2& matrix(int index) const { return matrices_[static_cast<std::size_t>(index)]; }

  /// Phases if every site shares them, for the symmetry operators.
  bool uniform_phases() const;
  bool real_coins() const;
  /// C_x == C_{x_min + x_max - x} for every site.
  bool reflection_symmetric() const;

 private:
  Geometry geometry_;
  std::vector<CoinParams> coins_;
  std::vector<Coin2> matrices_;
  Scenario scenario_;
};

}  // namespace qwalk
