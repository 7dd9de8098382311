#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "poa/errors.hpp"
#include "poa/money.hpp"
#include "poa/rng.hpp"

namespace poa {

// ---------------------------------------------------------------------------
// Piece expressions: closed forms with parameters, plus an escape hatch for
// composed forms (rationals of payment curves).
// ---------------------------------------------------------------------------
struct ExprConstant {
  double c = 0;
};

struct ExprLinear {  // a + b*x
  double a = 0, b = 0;
};

struct ExprReciprocal {  // a/(b - x) + c
  double a = 0, b = 0, c = 0;
};

struct ExprPowerReciprocal {  // a*(b - x)^(-p) + c
  double a = 0, b = 0, p = 1, c = 0;
};

struct ExprCallable {
  std::function<double(double)> f;
  std::string label;
};

using CdfExpr =
    std::variant<ExprConstant, ExprLinear, ExprReciprocal, ExprPowerReciprocal, ExprCallable>;

inline double eval_expr(const CdfExpr& e, double x) {
  return std::visit(
      [x](const auto& w) -> double {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ExprConstant>) return w.c;
        else if constexpr (std::is_same_v<T, ExprLinear>) return w.a + w.b * x;
        else if constexpr (std::is_same_v<T, ExprReciprocal>) return w.a / (w.b - x) + w.c;
        else if constexpr (std::is_same_v<T, ExprPowerReciprocal>)
          return w.a * std::pow(w.b - x, -w.p) + w.c;
        else return w.f(x);
      },
      e);
}

inline std::string expr_label(const CdfExpr& e) {
  return std::visit(
      [](const auto& w) -> std::string {
        using T = std::decay_t<decltype(w)>;
        if constexpr (std::is_same_v<T, ExprConstant>) return "constant";
        else if constexpr (std::is_same_v<T, ExprLinear>) return "linear";
        else if constexpr (std::is_same_v<T, ExprReciprocal>) return "reciprocal";
        else if constexpr (std::is_same_v<T, ExprPowerReciprocal>) return "power-reciprocal";
        else return w.label.empty() ? "callable" : w.label;
      },
      e);
}

struct CdfPiece {
  Money lo = 0, hi = 0;  // piece governs F on [lo, hi)
  CdfExpr expr;
};

// ---------------------------------------------------------------------------
// Piecewise-analytic CDF with explicit atoms. F is right-continuous; the
// value on [lo_k, hi_k) is expr_k; F = 0 left of the first piece and 1 at and
// beyond support_hi. Atoms are the upward jumps of this representation.
// ---------------------------------------------------------------------------
class Cdf {
 public:
  Cdf(std::vector<CdfPiece> pieces, Money support_hi)
      : pieces_(std::move(pieces)), support_hi_(support_hi) {
    validate();
  }

  static Cdf point_mass(Money p) { return Cdf({}, p); }

  static Cdf uniform(Money lo, Money hi) {
    if (!(hi > lo)) throw ContractError("Cdf::uniform: need hi > lo");
    return Cdf({CdfPiece{lo, hi, ExprLinear{-lo / (hi - lo), 1.0 / (hi - lo)}}}, hi);
  }

  // Discrete distribution from (point, mass) pairs; masses must sum to 1.
  static Cdf from_steps(std::vector<std::pair<Money, double>> atoms) {
    if (atoms.empty()) throw ContractError("Cdf::from_steps: no atoms");
    std::sort(atoms.begin(), atoms.end());
    double tot = 0;
    for (auto& [x, w] : atoms) {
      if (w <= 0) throw ContractError("Cdf::from_steps: nonpositive mass");
      tot += w;
    }
    if (!approx_eq(tot, 1.0, 1e-9)) throw ContractError("Cdf::from_steps: masses must sum to 1");
    std::vector<CdfPiece> pieces;
    double acc = 0;
    for (size_t i = 0; i + 1 < atoms.size(); ++i) {
      acc += atoms[i].second;
      pieces.push_back(CdfPiece{atoms[i].first, atoms[i + 1].first, ExprConstant{acc}});
    }
    return Cdf(std::move(pieces), atoms.back().first);
  }

  double eval(Money x) const {
    if (x >= support_hi_) return 1.0;
    if (pieces_.empty() || x < pieces_.front().lo) return 0.0;
    const CdfPiece& p = piece_at(x);
    return clamp01(eval_expr(p.expr, x));
  }

  // Left limit F(x-).
  double left_limit(Money x) const {
    if (pieces_.empty()) return x > support_hi_ ? 1.0 : 0.0;
    if (x <= pieces_.front().lo) return 0.0;
    if (x > support_hi_) return 1.0;
    for (const auto& p : pieces_)
      if (x > p.lo && x <= p.hi) return clamp01(eval_expr(p.expr, x));
    return 1.0;
  }

  double atom_mass(Money x) const { return eval(x) - left_limit(x); }

  std::vector<std::pair<Money, double>> atoms() const {
    std::vector<std::pair<Money, double>> out;
    auto consider = [&](Money x) {
      double m = atom_mass(x);
      if (m > 1e-13) out.push_back({x, m});
    };
    for (const auto& p : pieces_) consider(p.lo);
    consider(support_hi_);
    return out;
  }

  Money support_lo() const { return pieces_.empty() ? support_hi_ : pieces_.front().lo; }
  Money support_hi() const { return support_hi_; }
  const std::vector<CdfPiece>& pieces() const { return pieces_; }

  // Generalized inverse inf{x : F(x) >= rho} (rho <= 0 maps to the bottom of
  // the support).
  Money quantile(double rho) const {
    if (rho <= 0.0) return support_lo();
    if (rho > 1.0) throw ContractError("Cdf::quantile: rho > 1");
    for (const auto& p : pieces_) {
      if (clamp01(eval_expr(p.expr, p.lo)) >= rho) return p.lo;
      double at_top = clamp01(eval_expr(p.expr, p.hi));
      if (at_top < rho) continue;
      // monotone within the piece: bisect for the leftmost point >= rho
      double a = p.lo, b = p.hi;
      for (int it = 0; it < 80 && b - a > 0; ++it) {
        double mid = 0.5 * (a + b);
        if (clamp01(eval_expr(p.expr, mid)) >= rho) b = mid;
        else a = mid;
      }
      return b;
    }
    return support_hi_;
  }

  Money sample(RandomStream& rs) const { return quantile(nonzero_uniform(rs)); }

 private:
  static double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

  // Uniform on (0,1]; keeps quantile away from the rho=0 convention.
  static double nonzero_uniform(RandomStream& rs) {
    double u = rs.uniform();
    return u == 0.0 ? 1.0 : u;
  }

  const CdfPiece& piece_at(Money x) const {
    for (const auto& p : pieces_)
      if (x >= p.lo && x < p.hi) return p;
    throw DomainError("Cdf: x outside pieces");
  }

  void validate() const {
    double prev_hi = -std::numeric_limits<double>::infinity();
    double prev_val = 0.0;
    for (const auto& p : pieces_) {
      if (!(p.hi > p.lo)) throw ContractError("Cdf: empty piece");
      if (!pieces_.empty() && prev_hi != -std::numeric_limits<double>::infinity() &&
          std::abs(p.lo - prev_hi) > 1e-12)
        throw ContractError("Cdf: pieces must be contiguous");
      double at_lo = eval_expr(p.expr, p.lo);
      if (at_lo < prev_val - 1e-9) throw ContractError("Cdf: downward jump between pieces");
      // monotonicity spot check within the piece
      double last = at_lo;
      for (int k = 1; k <= 64; ++k) {
        double x = p.lo + (p.hi - p.lo) * k / 64.0;
        double fx = eval_expr(p.expr, x);
        if (fx < last - 1e-9) throw ContractError("Cdf: piece not monotone");
        if (fx < -1e-9 || fx > 1.0 + 1e-9) throw ContractError("Cdf: piece leaves [0,1]");
        last = fx;
      }
      prev_val = last;
      prev_hi = p.hi;
    }
    if (!pieces_.empty()) {
      if (pieces_.back().hi < support_hi_ - 1e-12)
        throw ContractError("Cdf: gap before support_hi");
      if (prev_val > 1.0 + 1e-9) throw ContractError("Cdf: exceeds 1 at support top");
    }
  }

  std::vector<CdfPiece> pieces_;
  Money support_hi_;
};

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------
namespace detail {

inline double simpson(const std::function<double(double)>& f, double a, double fa, double m,
                      double fm, double b, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                            double fb, double m, double fm, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, fa, lm, flm, m, fm);
  double right = simpson(f, m, fm, rm, frm, b, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, tol * 0.5, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, tol * 0.5, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b]; absolute tolerance, bounded recursion depth.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-10, int max_depth = 40) {
  if (a == b) return 0.0;
  double m = 0.5 * (a + b);
  double fa = f(a), fb = f(b), fm = f(m);
  double whole = detail::simpson(f, a, fa, m, fm, b, fb);
  return detail::adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// E[X] for a nonnegative random variable: integral of (1 - F), piece by
// piece, which handles atoms exactly.
inline double expectation(const Cdf& F) {
  if (F.support_lo() < -1e-12) throw DomainError("expectation: support must be nonnegative");
  double total = 0.0;
  double covered_from = std::max(0.0, static_cast<double>(F.support_lo()));
  total += covered_from;  // F = 0 on [0, support_lo)
  for (const auto& p : F.pieces()) {
    double lo = std::max(0.0, static_cast<double>(p.lo));
    if (lo >= p.hi) continue;
    total += integrate([&](double x) { return 1.0 - std::min(1.0, std::max(0.0, eval_expr(p.expr, x))); },
                       lo, p.hi);
  }
  if (F.pieces().empty()) total = std::max(0.0, static_cast<double>(F.support_hi()));
  return total;
}

// Expectation of h(X) for X ~ F via the quantile substitution
// E[h(X)] = integral over u in (0,1) of h(F^{-1}(u)).
inline double stieltjes_expect(const std::function<double(double)>& h, const Cdf& F,
                               double tol = 1e-10) {
  return integrate([&](double u) { return h(F.quantile(std::min(1.0, std::max(1e-15, u)))); },
                   0.0, 1.0, tol);
}

// ---------------------------------------------------------------------------
// Named distributions and bid optimization
// ---------------------------------------------------------------------------

// The single-item overbidding distribution with F(x)*(v - x) constant on its
// support: F(x) = v / (e (v - x)) on [0, (1 - 1/e) v].
inline Cdf hat_F(Money v) {
  if (v <= 0) throw ContractError("hat_F: need v > 0");
  double hi = (1.0 - 1.0 / std::exp(1.0)) * v;
  return Cdf({CdfPiece{0.0, hi, ExprReciprocal{v / std::exp(1.0), v, 0.0}}}, hi);
}

struct ArgmaxResult {
  Money arg = 0;
  double value = 0;
};

// Maximize a bounded objective on [lo, hi]: 4096-point grid, golden-section
// refinement around the best cell, candidate points evaluated exactly, ties
// resolved toward the smallest argument.
inline ArgmaxResult argmax_on_grid(const std::function<double(double)>& f, Money lo, Money hi,
                                   const std::vector<Money>& extra = {}) {
  if (hi < lo) throw ContractError("argmax_on_grid: empty interval");
  constexpr int kGrid = 4096;
  std::vector<double> candidates;
  candidates.reserve(kGrid + extra.size() + 8);
  for (int i = 0; i <= kGrid; ++i) candidates.push_back(lo + (hi - lo) * i / kGrid);
  for (Money x : extra)
    if (x >= lo && x <= hi) candidates.push_back(x);

  double best_val = -std::numeric_limits<double>::infinity();
  double best_arg = lo;
  size_t best_grid_idx = 0;
  for (size_t i = 0; i < candidates.size(); ++i) {
    double v = f(candidates[i]);
    if (v > best_val + 1e-15) {
      best_val = v;
      best_arg = candidates[i];
      if (i <= kGrid) best_grid_idx = i;
    }
  }

  // golden refinement around the best grid cell
  double step = (hi - lo) / kGrid;
  double a = std::max(static_cast<double>(lo), lo + (static_cast<double>(best_grid_idx) - 1) * step);
  double b = std::min(static_cast<double>(hi), lo + (static_cast<double>(best_grid_idx) + 1) * step);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && b - a > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  for (double x : {a, 0.5 * (a + b), b}) {
    double v = f(x);
    if (v > best_val + 1e-15) {
      best_val = v;
      best_arg = x;
    }
  }

  // tie rule: smallest argument whose value is within 1e-12 (relative) of max
  double tie_tol = 1e-12 * std::max(1.0, std::abs(best_val));
  double arg = best_arg;
  for (double x : candidates)
    if (x < arg && f(x) >= best_val - tie_tol) arg = x;
  return {arg, f(arg)};
}

// Best pure bid against an opponent-maximum CDF under first-price payoff:
// maximize F(a) * (v - a) over [0, v].
inline ArgmaxResult argmax_bid(const Cdf& F, Money v) {
  std::vector<Money> extra{F.support_lo(), F.support_hi()};
  for (const auto& p : F.pieces()) {
    extra.push_back(p.lo);
    extra.push_back(p.hi);
  }
  for (const auto& [x, m] : F.atoms()) extra.push_back(x);
  return argmax_on_grid([&](double a) { return F.eval(a) * (v - a); }, 0.0, v, extra);
}

}  // namespace poa
