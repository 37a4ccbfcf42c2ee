#include "wstar/bvcalc.hpp"

#include <algorithm>
#include <cmath>

#include "wstar/cantor.hpp"

namespace wstar {

namespace {

double jump_threshold(double l, double r) { return 1e-14 * std::max({1.0, std::abs(l), std::abs(r)}); }

std::vector<double> merged_grid(const std::vector<PiecewiseBV>& comps) {
  std::vector<double> all;
  for (const auto& c : comps) all.insert(all.end(), c.breakpoints().begin(), c.breakpoints().end());
  std::sort(all.begin(), all.end());
  const double tol = comps.front().window().eps();
  std::vector<double> out;
  for (double x : all) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  return out;
}

ChebPoly power(const ChebPoly& base, int k) {
  ChebPoly acc = ChebPoly::constant(base.domain(), 1.0);
  for (int i = 0; i < k; ++i) acc = acc * base;
  return acc;
}

}  // namespace

PiecewiseBV::PiecewiseBV(Window window, std::vector<double> breakpoints, std::vector<ChebPoly> pieces,
                         std::optional<CantorComponent> cantor)
    : window_(window), breakpoints_(std::move(breakpoints)), cantor_(cantor) {
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    if (!window_.contains_open(breakpoints_[i]) || (i > 0 && !(breakpoints_[i] > breakpoints_[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing and interior");
    }
  }
  if (pieces.size() != breakpoints_.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "need one piece per sub-interval");
  }
  if (cantor_ && !window_.contains(cantor_->carrier)) {
    throw Error(ErrorCode::InvalidArgument, "Cantor carrier outside window");
  }
  if (cantor_ && cantor_->amplitude == 0.0) cantor_.reset();
  pieces_.reserve(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (pieces[i].degree() > kMaxDegree) {
      throw Error(ErrorCode::InvalidArgument, "piece degree above cap");
    }
    const Window c = cell(static_cast<int>(i));
    pieces_.push_back(pieces[i].domain().same_as(c) ? ChebPoly(c, pieces[i].coeffs()) : pieces[i].on(c));
  }
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const double x = breakpoints_[i];
    const double cv = cantor_value(x);
    left_.push_back(pieces_[i](x) + cv);
    right_.push_back(pieces_[i + 1](x) + cv);
  }
}

PiecewiseBV PiecewiseBV::from_monomials(Window window, std::vector<double> breakpoints,
                                        const std::vector<std::vector<double>>& pieces,
                                        std::optional<CantorComponent> cantor) {
  if (pieces.size() != breakpoints.size() + 1) {
    throw Error(ErrorCode::InvalidArgument, "need one piece per sub-interval");
  }
  std::vector<ChebPoly> cheb;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const double lo = i == 0 ? window.a() : breakpoints[i - 1];
    const double hi = i == breakpoints.size() ? window.b() : breakpoints[i];
    cheb.push_back(ChebPoly::from_monomial(Window(lo, hi), pieces[i]));
  }
  return PiecewiseBV(window, std::move(breakpoints), std::move(cheb), cantor);
}

PiecewiseBV PiecewiseBV::constant(Window window, double value) {
  return PiecewiseBV(window, {}, {ChebPoly::constant(window, value)});
}

Window PiecewiseBV::cell(int i) const {
  const double lo = i == 0 ? window_.a() : breakpoints_.at(i - 1);
  const double hi = i == static_cast<int>(breakpoints_.size()) ? window_.b() : breakpoints_.at(i);
  return {lo, hi};
}

int PiecewiseBV::piece_index(double x) const noexcept {
  return static_cast<int>(std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
}

double PiecewiseBV::cantor_value(double x) const noexcept {
  if (!cantor_) return 0.0;
  const Window& c = cantor_->carrier;
  return cantor_->amplitude * cantor_function((x - c.a()) / c.length());
}

double PiecewiseBV::operator()(double x) const noexcept { return pieces_[piece_index(x)](x) + cantor_value(x); }

bool PiecewiseBV::is_jump(int i) const {
  return std::abs(jump(i)) > jump_threshold(left_.at(i), right_.at(i));
}

std::vector<Atom> PiecewiseBV::jumps() const {
  std::vector<Atom> out;
  for (int i = 0; i < static_cast<int>(breakpoints_.size()); ++i) {
    if (is_jump(i)) out.push_back({breakpoints_[i], jump(i)});
  }
  return out;
}

PiecewiseBV PiecewiseBV::refined(const std::vector<double>& grid) const {
  std::vector<ChebPoly> pieces;
  const double tol = window_.eps();
  std::vector<double> bps;
  for (double x : grid) {
    if (x > window_.a() + tol && x < window_.b() - tol) bps.push_back(x);
  }
  for (std::size_t i = 0; i <= bps.size(); ++i) {
    const double lo = i == 0 ? window_.a() : bps[i - 1];
    const double hi = i == bps.size() ? window_.b() : bps[i];
    const Window sub(lo, hi);
    pieces.push_back(pieces_[piece_index(sub.mid())].on(sub));
  }
  return PiecewiseBV(window_, std::move(bps), std::move(pieces), cantor_);
}

BVVector::BVVector(std::vector<PiecewiseBV> components) : components_(std::move(components)) {
  if (components_.empty()) throw Error(ErrorCode::DimensionMismatch, "BV vector needs n >= 1");
  for (const auto& c : components_) {
    if (!c.window().same_as(components_.front().window())) {
      throw Error(ErrorCode::WindowMismatch, "BV components on different windows");
    }
  }
  const std::vector<double> grid = merged_grid(components_);
  for (auto& c : components_) {
    if (c.breakpoints() != grid) c = c.refined(grid);
  }
}

State BVVector::operator()(double x) const {
  State out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c(x));
  return out;
}

bool BVVector::has_cantor() const noexcept {
  return std::any_of(components_.begin(), components_.end(), [](const PiecewiseBV& c) { return c.cantor().has_value(); });
}

double total_variation(const PiecewiseBV& f) {
  double tv = 0.0;
  for (const Atom& j : f.jumps()) tv += std::abs(j.weight);
  for (const ChebPoly& p : f.pieces()) tv += p.variation();
  if (f.cantor()) tv += std::abs(f.cantor()->amplitude);
  return tv;
}

BVDecomposition decompose(const PiecewiseBV& f) {
  const int m = static_cast<int>(f.breakpoints().size());
  std::vector<ChebPoly> cont, jump, sing;
  double cumulative = 0.0;
  for (int i = 0; i <= m; ++i) {
    if (i > 0 && f.is_jump(i - 1)) cumulative += f.jump(i - 1);
    const Window c = f.cell(i);
    cont.push_back(f.pieces()[i] + (-cumulative));
    jump.push_back(ChebPoly::constant(c, cumulative));
    sing.push_back(ChebPoly::constant(c, 0.0));
  }
  return {PiecewiseBV(f.window(), f.breakpoints(), std::move(cont)),
          PiecewiseBV(f.window(), f.breakpoints(), std::move(jump)),
          PiecewiseBV(f.window(), f.breakpoints(), std::move(sing), f.cantor())};
}

SignedMeasure dderiv(const PiecewiseBV& f) {
  std::vector<ChebPoly> density;
  for (const ChebPoly& p : f.pieces()) density.push_back(p.derivative());
  std::vector<CantorPart> cantor;
  if (f.cantor()) cantor.push_back({f.cantor()->carrier, f.cantor()->amplitude});
  return SignedMeasure(f.window(), f.jumps(), std::move(density), std::move(cantor));
}

MeasureVector dderiv(const BVVector& f) {
  std::vector<SignedMeasure> out;
  for (const auto& c : f.components()) out.push_back(dderiv(c));
  return MeasureVector(std::move(out));
}

SignedMeasure to_measure(const PiecewiseBV& f, int cantor_depth) {
  SignedMeasure base(f.window(), {}, f.pieces());
  if (!f.cantor()) return base;
  const CantorComponent& cc = *f.cantor();
  std::vector<ChebPoly> steps;
  const Window& w = f.window();
  if (cc.carrier.a() > w.a() + w.eps()) steps.push_back(ChebPoly::constant(Window(w.a(), cc.carrier.a()), 0.0));
  double cursor = cc.carrier.a();
  for (const CantorStep& s : cantor_steps(cc.carrier, cc.amplitude, cantor_depth)) {
    if (s.hi <= cursor) continue;
    steps.push_back(ChebPoly::constant(Window(cursor, s.hi), s.value));
    cursor = s.hi;
  }
  if (cc.carrier.b() < w.b() - w.eps()) steps.push_back(ChebPoly::constant(Window(cc.carrier.b(), w.b()), cc.amplitude));
  return add(base, SignedMeasure(w, {}, std::move(steps)));
}

MeasureVector to_measure(const BVVector& f, int cantor_depth) {
  std::vector<SignedMeasure> out;
  for (const auto& c : f.components()) out.push_back(to_measure(c, cantor_depth));
  return MeasureVector(std::move(out));
}

FluxComposition compose_flux(const BVVector& u, const FluxModel& flux, const ComposeOptions& opt) {
  if (u.has_cantor()) {
    throw Error(ErrorCode::SingularComponentUnsupported, "flux composition through a Cantor component");
  }
  const int n = u.size();
  if (flux.size() != n) throw Error(ErrorCode::DimensionMismatch, "flux size differs from state size");
  const PiecewiseBV& first = u[0];
  const int cells = static_cast<int>(first.pieces().size());
  std::vector<std::vector<ChebPoly>> out(n);
  double error = 0.0;

  for (int c = 0; c < cells; ++c) {
    const Window cell = first.cell(c);
    std::vector<ChebPoly> state;
    bool all_constant = true;
    for (int i = 0; i < n; ++i) {
      state.push_back(u[i].pieces()[c].chopped());
      all_constant = all_constant && state.back().degree() == 0;
    }
    if (all_constant) {
      State s(n);
      for (int i = 0; i < n; ++i) s[i] = state[i].coeffs()[0];
      const State f = flux.flux(s);
      for (int j = 0; j < n; ++j) out[j].push_back(ChebPoly::constant(cell, f[j]));
      continue;
    }
    std::optional<std::vector<ChebPoly>> projected;
    for (int j = 0; j < n; ++j) {
      if (auto poly = flux.polynomial(j)) {
        int degree = 0;
        for (const PolyTerm& t : *poly) {
          int d = 0;
          for (int i = 0; i < n; ++i) d += t.powers[i] * state[i].degree();
          degree = std::max(degree, d);
        }
        if (degree <= kMaxDegree) {
          ChebPoly acc = ChebPoly::constant(cell, 0.0);
          for (const PolyTerm& t : *poly) {
            ChebPoly term = ChebPoly::constant(cell, t.coeff);
            for (int i = 0; i < n; ++i) {
              if (t.powers[i] > 0) term = term * power(state[i], t.powers[i]);
            }
            acc = acc + term;
          }
          out[j].push_back(acc);
          continue;
        }
      }
      if (!projected) {
        // one flux evaluation per node serves every projected component
        projected.emplace();
        auto at = [&](double x) {
          State s(n);
          for (int i = 0; i < n; ++i) s[i] = state[i](x);
          return flux.flux(s);
        };
        for (int k = 0; k < n; ++k) {
          projected->push_back(ChebPoly::interpolate(cell, [&](double x) { return at(x)[k]; }, opt.cheb_degree));
        }
      }
      const ChebPoly& p = (*projected)[j];
      error = std::max(error, p.tail(4));
      out[j].push_back(p.chopped());
    }
  }
  if (error > opt.tolerance) {
    throw Error(ErrorCode::ProjectionErrorAboveTolerance, "flux projection tail above tolerance");
  }
  std::vector<PiecewiseBV> comps;
  for (int j = 0; j < n; ++j) comps.emplace_back(first.window(), first.breakpoints(), std::move(out[j]));
  return {BVVector(std::move(comps)), error};
}

}  // namespace wstar
