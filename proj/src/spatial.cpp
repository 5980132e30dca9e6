#include "orlicz/spatial.hpp"

#include <algorithm>
#include <cmath>

#include "orlicz/rng.hpp"
#include "orlicz/text.hpp"

namespace orlicz {

Vec Box::center() const {
  Vec c(lo.size());
  for (size_t k = 0; k < lo.size(); ++k) c[k] = 0.5 * (lo[k] + hi[k]);
  return c;
}

double Box::volume() const {
  double v = 1;
  for (size_t k = 0; k < lo.size(); ++k) v *= hi[k] - lo[k];
  return v;
}

bool Box::contains(const Vec& x, double tol) const {
  if (x.size() != lo.size()) return false;
  for (size_t k = 0; k < lo.size(); ++k)
    if (x[k] < lo[k] - tol || x[k] > hi[k] + tol) return false;
  return true;
}

void Box::validate() const {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 3)
    throw ConfigError("Box: need matching lo/hi with dimension 1..3");
  for (size_t k = 0; k < lo.size(); ++k)
    if (!(lo[k] < hi[k])) throw ConfigError("Box: lo must be strictly below hi");
}

std::string Box::describe() const { return "box " + fmt_vec(lo) + ".." + fmt_vec(hi); }

std::string Ball::describe() const {
  return "ball center=" + fmt_vec(center) + " radius=" + fmt_num(radius);
}

std::string SamplerSpec::record(int n) const {
  return "halton n=" + fmt_int(n) + " count=" + fmt_int(resolve_count(n)) +
         " start=" + fmt_int(static_cast<long long>(start)) +
         " center=" + (include_center ? "1" : "0");
}

double ball_volume(int n, double r) {
  switch (n) {
    case 1: return 2 * r;
    case 2: return M_PI * r * r;
    case 3: return 4.0 / 3.0 * M_PI * r * r * r;
    default: throw ConfigError("ball_volume: dimension must be 1..3");
  }
}

SpatialPhiFunction::SpatialPhiFunction(Box domain, std::shared_ptr<const SpatialExpr> expr,
                                       double weight)
    : domain_(std::move(domain)), weight_(weight), expr_(std::move(expr)) {
  domain_.validate();
  if (!expr_) throw std::invalid_argument("SpatialPhiFunction: null expression");
  if (!(weight_ > 0)) throw ConfigError("SpatialPhiFunction: weight must be positive");
  if (domain_.dim() != expr_->space_dim())
    throw std::invalid_argument("SpatialPhiFunction: domain/expression dimension mismatch");
}

int SpatialPhiFunction::space_dim() const { return expr_->space_dim(); }
int SpatialPhiFunction::vec_dim() const { return expr_->vec_dim(); }

ExtReal SpatialPhiFunction::eval(const Vec& x, const Vec& xi) const {
  if (static_cast<int>(x.size()) != space_dim() || static_cast<int>(xi.size()) != vec_dim())
    throw std::invalid_argument("SpatialPhiFunction::eval: dimension mismatch");
  return expr_->eval(x, xi);
}

PhiFunction SpatialPhiFunction::freeze(const Vec& x) const { return expr_->freeze(x); }
bool SpatialPhiFunction::x_independent() const { return expr_->x_independent(); }
bool SpatialPhiFunction::convex_in_xi() const { return expr_->convex_in_xi(); }
std::string SpatialPhiFunction::describe() const {
  return expr_->describe() + " on " + domain_.describe() + " weight=" + fmt_num(weight_);
}

double SpatialPhiFunction::measure(const Ball& b) const {
  const int n = space_dim();
  if (static_cast<int>(b.center.size()) != n) throw ConfigError("measure: ball dimension mismatch");
  if (!(b.radius > 0)) throw ConfigError("measure: ball radius must be positive");
  bool inside = true;
  for (int k = 0; k < n; ++k) {
    if (b.center[static_cast<size_t>(k)] - b.radius < domain_.lo[static_cast<size_t>(k)] - 1e-15 ||
        b.center[static_cast<size_t>(k)] + b.radius > domain_.hi[static_cast<size_t>(k)] + 1e-15)
      inside = false;
  }
  if (inside) return weight_ * ball_volume(n, b.radius);
  // Clipped ball: quasi Monte Carlo volume fraction over the clipped
  // bounding box with a fixed budget.
  Vec lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  double bbox_vol = 1;
  for (int k = 0; k < n; ++k) {
    lo[static_cast<size_t>(k)] = std::max(domain_.lo[static_cast<size_t>(k)], b.center[static_cast<size_t>(k)] - b.radius);
    hi[static_cast<size_t>(k)] = std::min(domain_.hi[static_cast<size_t>(k)], b.center[static_cast<size_t>(k)] + b.radius);
    if (!(hi[static_cast<size_t>(k)] > lo[static_cast<size_t>(k)])) return 0.0;
    bbox_vol *= hi[static_cast<size_t>(k)] - lo[static_cast<size_t>(k)];
  }
  const int budget = 4096;
  int in = 0;
  for (const auto& p : halton_box(budget, lo, hi))
    if (norm2(vdiff(p, b.center)) <= b.radius) ++in;
  return weight_ * bbox_vol * in / budget;
}

double SpatialPhiFunction::domain_measure() const { return weight_ * domain_.volume(); }

std::vector<Vec> SpatialPhiFunction::ball_samples(const Ball& b, const SamplerSpec& spec) const {
  const int n = space_dim();
  if (static_cast<int>(b.center.size()) != n)
    throw ConfigError("ball_samples: ball dimension mismatch");
  Vec lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n));
  for (int k = 0; k < n; ++k) {
    lo[static_cast<size_t>(k)] = std::max(domain_.lo[static_cast<size_t>(k)], b.center[static_cast<size_t>(k)] - b.radius);
    hi[static_cast<size_t>(k)] = std::min(domain_.hi[static_cast<size_t>(k)], b.center[static_cast<size_t>(k)] + b.radius);
    if (!(hi[static_cast<size_t>(k)] >= lo[static_cast<size_t>(k)]))
      throw ConfigError("ball_samples: ball does not meet the domain");
  }
  std::vector<Vec> out;
  const bool has_center = spec.include_center && domain_.contains(b.center, 1e-15);
  if (has_center) out.push_back(b.center);
  const int want = spec.resolve_count(n) + (has_center ? 1 : 0);
  std::uint64_t idx = spec.start;
  std::uint64_t guard = 0;
  while (static_cast<int>(out.size()) < want) {
    Vec u = halton_point(idx++, n);
    Vec p(u.size());
    for (size_t k = 0; k < u.size(); ++k) p[k] = lo[k] + (hi[k] - lo[k]) * u[k];
    if (norm2(vdiff(p, b.center)) <= b.radius) out.push_back(std::move(p));
    if (++guard > 20'000'000)
      throw ConfigError("ball_samples: intersection with the domain has negligible volume");
  }
  return out;
}

std::vector<Vec> SpatialPhiFunction::domain_samples(const SamplerSpec& spec) const {
  const int n = space_dim();
  std::vector<Vec> out;
  // corners
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec p(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k)
      p[static_cast<size_t>(k)] = (mask >> k) & 1 ? domain_.hi[static_cast<size_t>(k)] : domain_.lo[static_cast<size_t>(k)];
    out.push_back(std::move(p));
  }
  if (spec.include_center) out.push_back(domain_.center());
  auto fill = halton_box(spec.resolve_count(n), domain_.lo, domain_.hi, spec.start);
  out.insert(out.end(), fill.begin(), fill.end());
  return out;
}

namespace {

class BallExtremum final : public PhiExpr {
 public:
  BallExtremum(std::shared_ptr<const SpatialExpr> expr, std::vector<Vec> samples, bool take_sup,
               std::string label, bool convex)
      : expr_(std::move(expr)), samples_(std::move(samples)), sup_(take_sup),
        label_(std::move(label)), convex_(convex) {}
  int dim() const override { return expr_->vec_dim(); }
  ExtReal eval(const Vec& xi) const override {
    ExtReal acc = expr_->eval(samples_.front(), xi);
    for (size_t i = 1; i < samples_.size(); ++i) {
      ExtReal v = expr_->eval(samples_[i], xi);
      acc = sup_ ? max(acc, v) : min(acc, v);
    }
    return acc;
  }
  bool convex() const override { return convex_; }
  std::string describe() const override { return label_; }

 private:
  std::shared_ptr<const SpatialExpr> expr_;
  std::vector<Vec> samples_;
  bool sup_;
  std::string label_;
  bool convex_;
};

}  // namespace

PhiFunction SpatialPhiFunction::ball_inf(const Ball& b, const SamplerSpec& spec) const {
  auto samples = ball_samples(b, spec);
  std::string label = "phi_minus(" + b.describe() + ", " + spec.record(space_dim()) + ")";
  // A pointwise infimum of convex functions is generally not convex.
  bool convex = x_independent() && convex_in_xi();
  return PhiFunction(std::make_shared<BallExtremum>(expr_, std::move(samples), false, label, convex));
}

PhiFunction SpatialPhiFunction::ball_sup(const Ball& b, const SamplerSpec& spec) const {
  auto samples = ball_samples(b, spec);
  std::string label = "phi_plus(" + b.describe() + ", " + spec.record(space_dim()) + ")";
  // A pointwise supremum of convex functions is convex.
  bool convex = convex_in_xi();
  return PhiFunction(std::make_shared<BallExtremum>(expr_, std::move(samples), true, label, convex));
}

namespace {

class ConstantExpr final : public SpatialExpr {
 public:
  ConstantExpr(int n, PhiFunction phi) : n_(n), phi_(std::move(phi)) {}
  int space_dim() const override { return n_; }
  int vec_dim() const override { return phi_.dim(); }
  ExtReal eval(const Vec&, const Vec& xi) const override { return phi_(xi); }
  PhiFunction freeze(const Vec&) const override { return phi_; }
  bool x_independent() const override { return true; }
  bool convex_in_xi() const override { return phi_.convex(); }
  std::string describe() const override { return "constant-in-x " + phi_.describe(); }

 private:
  int n_;
  PhiFunction phi_;
};

class VariablePowerExpr final : public SpatialExpr {
 public:
  VariablePowerExpr(int n, int m, double p0, Vec grad, Vec ref)
      : n_(n), m_(m), p0_(p0), grad_(std::move(grad)), ref_(std::move(ref)) {}
  int space_dim() const override { return n_; }
  int vec_dim() const override { return m_; }
  double p_at(const Vec& x) const { return p0_ + dot(grad_, vdiff(x, ref_)); }
  ExtReal eval(const Vec& x, const Vec& xi) const override {
    return ExtReal(std::pow(norm2(xi), p_at(x)));
  }
  PhiFunction freeze(const Vec& x) const override { return PhiFunction::power(m_, p_at(x)); }
  bool x_independent() const override { return norm2(grad_) == 0; }
  bool convex_in_xi() const override { return true; }  // p(x) >= 1 enforced at build
  std::string describe() const override {
    return "variable-power(p0=" + fmt_num(p0_) + ",grad=" + fmt_vec(grad_) + ")";
  }

 private:
  int n_, m_;
  double p0_;
  Vec grad_, ref_;
};

class DoublePhaseSpatialExpr final : public SpatialExpr {
 public:
  DoublePhaseSpatialExpr(int n, int m, SpatialPhiFunction::DoublePhaseSpec spec)
      : n_(n), m_(m), s_(std::move(spec)) {}
  int space_dim() const override { return n_; }
  int vec_dim() const override { return m_; }
  double a_at(const Vec& x) const {
    return s_.a0 + s_.holder_const * std::pow(norm2(vdiff(x, s_.x0)), s_.holder_alpha);
  }
  double q_at(const Vec& x) const {
    return std::max(s_.p, s_.q_hi - s_.q_slope * norm2(vdiff(x, s_.x0)));
  }
  ExtReal eval(const Vec& x, const Vec& xi) const override {
    double t = norm2(xi);
    double u = s_.directional ? std::abs(xi[0]) : t;
    return ExtReal(std::pow(t, s_.p) + a_at(x) * std::pow(u, q_at(x)));
  }
  PhiFunction freeze(const Vec& x) const override {
    return s_.directional ? PhiFunction::directional_double_phase(m_, s_.p, q_at(x), a_at(x))
                          : PhiFunction::double_phase(m_, s_.p, q_at(x), a_at(x));
  }
  bool x_independent() const override {
    return s_.holder_const == 0 && (s_.q_slope == 0 || s_.a0 == 0);
  }
  bool convex_in_xi() const override { return true; }  // p, q >= 1 enforced at build
  std::string describe() const override {
    return "double-phase-weighted(p=" + fmt_num(s_.p) + ",q_hi=" + fmt_num(s_.q_hi) +
           ",q_slope=" + fmt_num(s_.q_slope) + ",a0=" + fmt_num(s_.a0) +
           ",A=" + fmt_num(s_.holder_const) + ",alpha=" + fmt_num(s_.holder_alpha) +
           ",x0=" + fmt_vec(s_.x0) + (s_.directional ? ",directional" : "") + ")";
  }

 private:
  int n_, m_;
  SpatialPhiFunction::DoublePhaseSpec s_;
};

}  // namespace

SpatialPhiFunction SpatialPhiFunction::constant(Box domain, PhiFunction phi, double weight) {
  int n = domain.dim();
  return SpatialPhiFunction(std::move(domain), std::make_shared<ConstantExpr>(n, std::move(phi)),
                            weight);
}

SpatialPhiFunction SpatialPhiFunction::variable_power(Box domain, int m, double p0, Vec p_grad,
                                                      double weight) {
  domain.validate();
  if (static_cast<int>(p_grad.size()) != domain.dim())
    throw ConfigError("variable_power: gradient dimension mismatch");
  Vec ref = domain.center();
  // Affine exponent attains its extrema at box corners.
  double pmin = HUGE_VAL;
  for (int mask = 0; mask < (1 << domain.dim()); ++mask) {
    Vec c(static_cast<size_t>(domain.dim()));
    for (int k = 0; k < domain.dim(); ++k)
      c[static_cast<size_t>(k)] = (mask >> k) & 1 ? domain.hi[static_cast<size_t>(k)] : domain.lo[static_cast<size_t>(k)];
    pmin = std::min(pmin, p0 + dot(p_grad, vdiff(c, ref)));
  }
  if (pmin < 1.0) throw ConfigError("variable_power: exponent drops below 1 on the domain");
  int n = domain.dim();
  return SpatialPhiFunction(
      std::move(domain),
      std::make_shared<VariablePowerExpr>(n, m, p0, std::move(p_grad), std::move(ref)), weight);
}

SpatialPhiFunction SpatialPhiFunction::double_phase(Box domain, int m, DoublePhaseSpec spec,
                                                    double weight) {
  domain.validate();
  if (static_cast<int>(spec.x0.size()) != domain.dim())
    throw ConfigError("double_phase: x0 dimension mismatch");
  if (spec.p < 1 || spec.q_hi < spec.p) throw ConfigError("double_phase: need 1 <= p <= q_hi");
  if (spec.q_slope < 0 || spec.a0 < 0 || spec.holder_const < 0)
    throw ConfigError("double_phase: negative coefficient");
  if (!(spec.holder_alpha > 0) || spec.holder_alpha > 1)
    throw ConfigError("double_phase: alpha must lie in (0, 1]");
  int n = domain.dim();
  return SpatialPhiFunction(std::move(domain),
                            std::make_shared<DoublePhaseSpatialExpr>(n, m, std::move(spec)),
                            weight);
}

double double_phase_admissibility_gap(const SpatialPhiFunction::DoublePhaseSpec& spec, int n) {
  return spec.q_hi / spec.p - (1.0 + spec.holder_alpha / n);
}

}  // namespace orlicz
