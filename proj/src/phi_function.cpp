#include "orlicz/phi_function.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "orlicz/text.hpp"

namespace orlicz {

PhiFunction::PhiFunction(std::shared_ptr<const PhiExpr> expr) : expr_(std::move(expr)) {
  if (!expr_) throw std::invalid_argument("PhiFunction: null expression");
}

int PhiFunction::dim() const {
  if (!expr_) throw std::logic_error("PhiFunction: empty handle");
  return expr_->dim();
}

ExtReal PhiFunction::operator()(const Vec& xi) const {
  if (!expr_) throw std::logic_error("PhiFunction: empty handle");
  if (static_cast<int>(xi.size()) != expr_->dim())
    throw std::invalid_argument("PhiFunction: argument dimension mismatch");
  return expr_->eval(xi);
}

bool PhiFunction::convex() const {
  if (!expr_) throw std::logic_error("PhiFunction: empty handle");
  return expr_->convex();
}

std::string PhiFunction::describe() const {
  if (!expr_) return "<empty>";
  return expr_->describe();
}

namespace {

class PowerExpr final : public PhiExpr {
 public:
  PowerExpr(int m, double p) : m_(m), p_(p) {
    if (m < 1 || m > 4) throw std::invalid_argument("power: m must be 1..4");
    if (!(p > 0)) throw std::invalid_argument("power: p must be positive");
  }
  int dim() const override { return m_; }
  ExtReal eval(const Vec& xi) const override { return ExtReal(std::pow(norm2(xi), p_)); }
  bool convex() const override { return p_ >= 1; }
  std::string describe() const override {
    return "power(m=" + fmt_int(m_) + ",p=" + fmt_num(p_) + ")";
  }

 private:
  int m_;
  double p_;
};

class DoublePhaseExpr final : public PhiExpr {
 public:
  DoublePhaseExpr(int m, double p, double q, double a, bool directional)
      : m_(m), p_(p), q_(q), a_(a), directional_(directional) {
    if (m < 1 || m > 4) throw std::invalid_argument("double-phase: m must be 1..4");
    if (!(p > 0) || !(q > 0)) throw std::invalid_argument("double-phase: exponents must be positive");
    if (a < 0) throw std::invalid_argument("double-phase: weight a must be >= 0");
  }
  int dim() const override { return m_; }
  ExtReal eval(const Vec& xi) const override {
    double t = norm2(xi);
    double u = directional_ ? std::abs(xi[0]) : t;
    return ExtReal(std::pow(t, p_) + a_ * std::pow(u, q_));
  }
  bool convex() const override { return p_ >= 1 && q_ >= 1; }
  std::string describe() const override {
    std::string head = directional_ ? "directional-double-phase" : "double-phase";
    return head + "(m=" + fmt_int(m_) + ",p=" + fmt_num(p_) + ",q=" + fmt_num(q_) +
           ",a=" + fmt_num(a_) + ")";
  }

 private:
  int m_;
  double p_, q_, a_;
  bool directional_;
};

class LinfIndicatorExpr final : public PhiExpr {
 public:
  LinfIndicatorExpr(int m, double r) : m_(m), r_(r) {
    if (m < 1 || m > 4) throw std::invalid_argument("linfty-indicator: m must be 1..4");
    if (!(r > 0) || r > 1) throw std::invalid_argument("linfty-indicator: r must be in (0,1]");
  }
  int dim() const override { return m_; }
  ExtReal eval(const Vec& xi) const override {
    return norm_p(xi, r_) <= 1.0 ? ExtReal(0.0) : ExtReal::infinity();
  }
  // The l^r unit ball is convex only at r = 1.
  bool convex() const override { return r_ == 1.0; }
  std::string describe() const override {
    return "linfty-indicator(m=" + fmt_int(m_) + ",r=" + fmt_num(r_) + ")";
  }

 private:
  int m_;
  double r_;
};

class DiagQuadraticExpr final : public PhiExpr {
 public:
  explicit DiagQuadraticExpr(Vec w) : w_(std::move(w)) {
    if (w_.empty() || w_.size() > 4)
      throw std::invalid_argument("diag-quadratic: need 1..4 weights");
    for (double x : w_)
      if (!(x >= 0)) throw std::invalid_argument("diag-quadratic: weights must be >= 0");
  }
  int dim() const override { return static_cast<int>(w_.size()); }
  ExtReal eval(const Vec& xi) const override {
    double s = 0;
    for (size_t i = 0; i < w_.size(); ++i) s += w_[i] * xi[i] * xi[i];
    return ExtReal(s);
  }
  bool convex() const override { return true; }
  std::string describe() const override { return "diag-quadratic(w=" + fmt_vec(w_) + ")"; }

 private:
  Vec w_;
};

class MinExpr final : public PhiExpr {
 public:
  explicit MinExpr(std::vector<PhiFunction> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("min-of-list: empty list");
    for (const auto& p : parts_)
      if (p.dim() != parts_.front().dim())
        throw std::invalid_argument("min-of-list: mixed dimensions");
  }
  int dim() const override { return parts_.front().dim(); }
  ExtReal eval(const Vec& xi) const override {
    ExtReal best = parts_.front()(xi);
    for (size_t i = 1; i < parts_.size(); ++i) best = min(best, parts_[i](xi));
    return best;
  }
  // A minimum of convex functions is in general not convex.
  std::string describe() const override {
    std::vector<std::string> d;
    for (const auto& p : parts_) d.push_back(p.describe());
    return "min[" + join(d, " | ") + "]";
  }

 private:
  std::vector<PhiFunction> parts_;
};

class TabulatedExpr final : public PhiExpr {
 public:
  explicit TabulatedExpr(GridFunction table) : table_(std::move(table)) {
    table_.validate();
    if (!table_.axes)
      throw std::invalid_argument("tabulated: requires a product grid (interpolation)");
    for (const auto& ax : *table_.axes)
      if (ax.front() > 0 || ax.back() < 0)
        throw std::invalid_argument("tabulated: table box must contain the origin");
  }
  int dim() const override { return table_.dim; }
  ExtReal eval(const Vec& xi) const override {
    if (table_.in_box(xi)) return table_.interpolate(xi);
    // Outside the box, extend linearly along the ray from the origin:
    // Phi(xi) = Phi(s xi) / s with s the largest shrink factor landing the
    // point in the box.  Linear-in-radius growth is the smallest extension
    // consistent with (Inc)_1.
    double s = 1.0;
    const auto& ax = *table_.axes;
    for (size_t a = 0; a < ax.size(); ++a) {
      if (xi[a] > ax[a].back())
        s = std::min(s, ax[a].back() / xi[a]);
      else if (xi[a] < ax[a].front())
        s = std::min(s, ax[a].front() / xi[a]);
    }
    if (!(s > 0)) return ExtReal::infinity();  // degenerate box edge through 0
    return scale(1.0 / s, table_.interpolate(scaled(s, xi)));
  }
  std::string describe() const override {
    return "tabulated(m=" + fmt_int(table_.dim) + ",n=" + fmt_int(static_cast<long long>(table_.size())) + ")";
  }

 private:
  GridFunction table_;
};

class ScaledExpr final : public PhiExpr {
 public:
  ScaledExpr(PhiFunction inner, double beta) : inner_(std::move(inner)), beta_(beta) {
    if (!(beta > 0)) throw std::invalid_argument("scaled: beta must be positive");
  }
  int dim() const override { return inner_.dim(); }
  ExtReal eval(const Vec& xi) const override { return inner_(scaled(beta_, xi)); }
  bool convex() const override { return inner_.convex(); }
  std::string describe() const override {
    return "scaled(beta=" + fmt_num(beta_) + "," + inner_.describe() + ")";
  }

 private:
  PhiFunction inner_;
  double beta_;
};

class TimesExpr final : public PhiExpr {
 public:
  TimesExpr(double c, PhiFunction inner) : c_(c), inner_(std::move(inner)) {
    if (!(c >= 0)) throw std::invalid_argument("times: factor must be >= 0");
  }
  int dim() const override { return inner_.dim(); }
  ExtReal eval(const Vec& xi) const override { return scale(c_, inner_(xi)); }
  bool convex() const override { return inner_.convex(); }
  std::string describe() const override {
    return "times(c=" + fmt_num(c_) + "," + inner_.describe() + ")";
  }

 private:
  double c_;
  PhiFunction inner_;
};

class CallableExpr final : public PhiExpr {
 public:
  CallableExpr(int m, std::function<ExtReal(const Vec&)> f, bool convex, std::string label)
      : m_(m), f_(std::move(f)), convex_(convex), label_(std::move(label)) {
    if (m < 1 || m > 4) throw std::invalid_argument("callable: m must be 1..4");
  }
  int dim() const override { return m_; }
  ExtReal eval(const Vec& xi) const override { return f_(xi); }
  bool convex() const override { return convex_; }
  std::string describe() const override { return label_; }

 private:
  int m_;
  std::function<ExtReal(const Vec&)> f_;
  bool convex_;
  std::string label_;
};

}  // namespace

PhiFunction PhiFunction::power(int m, double p) {
  return PhiFunction(std::make_shared<PowerExpr>(m, p));
}
PhiFunction PhiFunction::double_phase(int m, double p, double q, double a) {
  return PhiFunction(std::make_shared<DoublePhaseExpr>(m, p, q, a, false));
}
PhiFunction PhiFunction::directional_double_phase(int m, double p, double q, double a) {
  return PhiFunction(std::make_shared<DoublePhaseExpr>(m, p, q, a, true));
}
PhiFunction PhiFunction::linf_indicator(int m, double r) {
  return PhiFunction(std::make_shared<LinfIndicatorExpr>(m, r));
}
PhiFunction PhiFunction::diag_quadratic(Vec weights) {
  return PhiFunction(std::make_shared<DiagQuadraticExpr>(std::move(weights)));
}
PhiFunction PhiFunction::min_of(std::vector<PhiFunction> parts) {
  return PhiFunction(std::make_shared<MinExpr>(std::move(parts)));
}
PhiFunction PhiFunction::tabulated(GridFunction table) {
  return PhiFunction(std::make_shared<TabulatedExpr>(std::move(table)));
}
PhiFunction PhiFunction::scaled(PhiFunction inner, double beta) {
  return PhiFunction(std::make_shared<ScaledExpr>(std::move(inner), beta));
}
PhiFunction PhiFunction::times(double c, PhiFunction inner) {
  return PhiFunction(std::make_shared<TimesExpr>(c, std::move(inner)));
}
PhiFunction PhiFunction::from_callable(int m, std::function<ExtReal(const Vec&)> f, bool convex,
                                       std::string label) {
  return PhiFunction(std::make_shared<CallableExpr>(m, std::move(f), convex, std::move(label)));
}

}  // namespace orlicz
