#include "qwalk/geometry.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace qwalk {

std::string_view to_string(GeometryKind kind) {
  switch (kind) {
    case GeometryKind::Cycle: return "cycle";
    case GeometryKind::Wire: return "wire";
    case GeometryKind::TruncatedLine: return "truncated-line";
  }
  return "unknown";
}

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::Custom: return "custom";
    case Scenario::Homogeneous: return "homogeneous";
    case Scenario::Interface: return "interface";
    case Scenario::CycleTwoSegment: return "cycle-two-segment";
    case Scenario::Defect: return "defect";
    case Scenario::Wire: return "wire";
    case Scenario::RandomBulkWire: return "random-bulk-wire";
  }
  return "unknown";
}

Geometry::Geometry(GeometryKind kind, int size, int origin_offset, int horizon)
    : kind_(kind), size_(size), origin_offset_(origin_offset), horizon_(horizon) {
  if (size < 2) throw std::invalid_argument("geometry needs at least 2 sites");
}

Geometry Geometry::cycle(int size, int origin_offset) {
  return Geometry(GeometryKind::Cycle, size, origin_offset, 0);
}

Geometry Geometry::wire(int size) {
  if (size < 3) throw std::invalid_argument("a wire needs two reflecting ends and a bulk site");
  return Geometry(GeometryKind::Wire, size, -((size - 1) / 2), 0);
}

Geometry Geometry::truncated_line(int horizon, int support_radius) {
  if (horizon < 0 || support_radius < 0) throw std::invalid_argument("negative horizon or support");
  const int half = horizon + support_radius + 1;
  return Geometry(GeometryKind::TruncatedLine, 2 * half + 1, -half, horizon);
}

Geometry Geometry::truncated_line(int size, int horizon, int support_radius) {
  if (horizon < 0 || support_radius < 0) throw std::invalid_argument("negative horizon or support");
  if (size < 2 * horizon + 2 * support_radius + 2) {
    throw std::invalid_argument("truncated line of " + std::to_string(size) +
                                " sites is smaller than the light cone of horizon " +
                                std::to_string(horizon));
  }
  return Geometry(GeometryKind::TruncatedLine, size, -((size - 1) / 2), horizon);
}

int Geometry::index(int x) const {
  int i = (x - origin_offset_) % size_;
  return i < 0 ? i + size_ : i;
}

namespace {

constexpr double kEndTolerance = 1e-9;

double snap_reflecting(double theta) {
  const double t = fold_angle(theta);
  if (std::abs(t - 0.5 * kPi) < kEndTolerance) return 0.5 * kPi;
  if (std::abs(t + 0.5 * kPi) < kEndTolerance) return -0.5 * kPi;
  throw std::invalid_argument("wire end coins must have |theta| = pi/2, got " + std::to_string(theta));
}

}  // namespace

CoinField::CoinField(Geometry geometry, std::vector<CoinParams> coins, Scenario scenario)
    : geometry_(geometry), coins_(std::move(coins)), scenario_(scenario) {
  if (static_cast<int>(coins_.size()) != geometry_.size()) {
    throw std::invalid_argument("coin field length differs from geometry size");
  }
  if (geometry_.kind() == GeometryKind::Wire) {
    auto& first = coins_.front();
    auto& last = coins_.back();
    first = CoinParams(snap_reflecting(first.theta()), first.phases());
    last = CoinParams(snap_reflecting(last.theta()), last.phases());
  }
  matrices_.reserve(coins_.size());
  for (const auto& c : coins_) matrices_.push_back(coin_matrix(c));
}

CoinField CoinField::homogeneous(const Geometry& geometry, const CoinParams& coin) {
  return CoinField(geometry, std::vector<CoinParams>(static_cast<std::size_t>(geometry.size()), coin),
                   Scenario::Homogeneous);
}

CoinField CoinField::interface(const Geometry& geometry, double theta_minus, double theta_plus,
                               CoinPhases phases) {
  std::vector<CoinParams> coins;
  coins.reserve(static_cast<std::size_t>(geometry.size()));
  for (int i = 0; i < geometry.size(); ++i) {
    coins.emplace_back(geometry.coordinate(i) < 0 ? theta_minus : theta_plus, phases);
  }
  return CoinField(geometry, std::move(coins), Scenario::Interface);
}

CoinField CoinField::cycle_two_segment(int size, int segment, double theta_a, double theta_b,
                                       CoinPhases phases) {
  if (segment < 1 || segment >= size) throw std::invalid_argument("segment length must be in [1, D)");
  std::vector<CoinParams> coins;
  coins.reserve(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) coins.emplace_back(i < segment ? theta_a : theta_b, phases);
  return CoinField(Geometry::cycle(size), std::move(coins), Scenario::CycleTwoSegment);
}

CoinField CoinField::defect(const Geometry& geometry, double theta_a, double theta_b,
                            CoinPhases phases, int defect_x) {
  if (!geometry.contains(defect_x)) throw std::invalid_argument("defect outside the lattice");
  std::vector<CoinParams> coins;
  coins.reserve(static_cast<std::size_t>(geometry.size()));
  for (int i = 0; i < geometry.size(); ++i) {
    coins.emplace_back(geometry.coordinate(i) == defect_x ? theta_a : theta_b, phases);
  }
  return CoinField(geometry, std::move(coins), Scenario::Defect);
}

CoinField CoinField::wire(int size, double theta, double left_end, double right_end,
                          CoinPhases phases) {
  if (size < 3) throw std::invalid_argument("a wire needs at least 3 sites");
  const std::vector<double> bulk(static_cast<std::size_t>(size - 2), theta);
  CoinField f = wire(bulk, left_end, right_end, phases);
  f.scenario_ = Scenario::Wire;
  return f;
}

CoinField CoinField::wire(std::span<const double> bulk_thetas, double left_end, double right_end,
                          CoinPhases phases) {
  const int size = static_cast<int>(bulk_thetas.size()) + 2;
  std::vector<CoinParams> coins;
  coins.reserve(static_cast<std::size_t>(size));
  coins.emplace_back(left_end, phases);
  for (double t : bulk_thetas) coins.emplace_back(t, phases);
  coins.emplace_back(right_end, phases);
  return CoinField(Geometry::wire(size), std::move(coins), Scenario::Wire);
}

CoinField CoinField::random_bulk_wire(int size, double theta_lo, double theta_hi, std::uint64_t seed,
                                      double left_end, double right_end, CoinPhases phases) {
  if (size < 3) throw std::invalid_argument("a wire needs at least 3 sites");
  if (!(theta_lo <= theta_hi)) throw std::invalid_argument("empty disorder range");
  std::mt19937_64 rng(seed);
  std::vector<double> bulk(static_cast<std::size_t>(size - 2));
  for (auto& t : bulk) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    t = theta_lo + (theta_hi - theta_lo) * u;
  }
  CoinField f = wire(bulk, left_end, right_end, phases);
  f.scenario_ = Scenario::RandomBulkWire;
  return f;
}

bool CoinField::uniform_phases() const {
  for (const auto& c : coins_) {
    if (!(c.phases() == coins_.front().phases())) return false;
  }
  return true;
}

bool CoinField::real_coins() const {
  for (const auto& c : coins_) {
    if (!c.phases().is_real()) return false;
  }
  return true;
}

bool CoinField::reflection_symmetric() const {
  const int n = geometry_.size();
  for (int i = 0; i < n; ++i) {
    if (!(coins_[static_cast<std::size_t>(i)] == coins_[static_cast<std::size_t>(n - 1 - i)])) {
      return false;
    }
  }
  return true;
}

}  // namespace qwalk
