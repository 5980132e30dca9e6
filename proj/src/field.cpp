#include "orlicz/field.hpp"

#include <cmath>

#include "orlicz/text.hpp"

namespace orlicz {

void VectorField::validate() const {
  if (samples.empty()) throw ConfigError("VectorField: no samples");
  bool positive = false;
  for (const auto& s : samples) {
    if (static_cast<int>(s.x.size()) != space_dim || static_cast<int>(s.value.size()) != vec_dim)
      throw ConfigError("VectorField: sample dimension mismatch");
    if (!(s.weight >= 0) || !std::isfinite(s.weight))
      throw ConfigError("VectorField: weights must be finite and >= 0");
    if (s.weight > 0) positive = true;
  }
  if (!positive) throw ConfigError("VectorField: total weight is zero");
}

double VectorField::total_weight() const {
  double w = 0;
  for (const auto& s : samples) w += s.weight;
  return w;
}

Vec VectorField::average() const {
  Vec acc = zero_vec(vec_dim);
  double w = 0;
  for (const auto& s : samples) {
    for (int k = 0; k < vec_dim; ++k) acc[static_cast<size_t>(k)] += s.weight * s.value[static_cast<size_t>(k)];
    w += s.weight;
  }
  if (!(w > 0)) throw ConfigError("VectorField::average: total weight is zero");
  return scaled(1.0 / w, acc);
}

VectorField VectorField::scaled_by(double c) const {
  VectorField out = *this;
  for (auto& s : out.samples) s.value = scaled(c, s.value);
  return out;
}

VectorField VectorField::constant_on_ball(const SpatialPhiFunction& phi, const Ball& b,
                                          const Vec& value, const SamplerSpec& spec) {
  return on_ball(phi, b, [&value](const Vec&) { return value; }, spec);
}

VectorField VectorField::on_ball(const SpatialPhiFunction& phi, const Ball& b,
                                 const std::function<Vec(const Vec&)>& f,
                                 const SamplerSpec& spec) {
  auto pts = phi.ball_samples(b, spec);
  double mu = phi.measure(b);
  if (!(mu > 0)) throw ConfigError("VectorField::on_ball: ball has measure zero");
  VectorField out;
  out.space_dim = phi.space_dim();
  out.vec_dim = phi.vec_dim();
  double w = mu / static_cast<double>(pts.size());
  for (auto& p : pts) {
    FieldSample s;
    s.value = f(p);
    s.x = std::move(p);
    s.weight = w;
    out.samples.push_back(std::move(s));
  }
  out.validate();
  return out;
}

ExtReal modular(const SpatialPhiFunction& phi, const VectorField& v) {
  v.validate();
  if (v.space_dim != phi.space_dim() || v.vec_dim != phi.vec_dim())
    throw ConfigError("modular: field/phi dimension mismatch");
  // Neumaier compensated summation: refining a field by splitting a weight
  // across duplicates of the same point must not move the total.
  double sum = 0, comp = 0;
  for (const auto& s : v.samples) {
    if (s.weight == 0) continue;
    ExtReal term = phi.eval(s.x, s.value);
    if (term.is_infinite()) return ExtReal::infinity();
    double t = s.weight * term.value();
    double fresh = sum + t;
    if (std::abs(sum) >= std::abs(t))
      comp += (sum - fresh) + t;
    else
      comp += (t - fresh) + sum;
    sum = fresh;
  }
  return ExtReal(sum + comp);
}

NormResult luxemburg_norm(const SpatialPhiFunction& phi, const VectorField& v, double rel_tol) {
  v.validate();
  NormResult out;
  bool zero = true;
  for (const FieldSample& s : v.samples)
    if (norm2(s.value) != 0) {
      zero = false;
      break;
    }
  if (zero) {
    out.status = NormResult::Status::Finite;
    out.value = 0;
    out.note = "zero field";
    return out;
  }
  auto rho = [&](double lambda) { return modular(phi, v.scaled_by(1.0 / lambda)); };
  const double cap = 0x1p64;
  double good = 0, bad = 0;  // rho(good) <= 1 < rho(bad)
  if (rho(1.0) <= ExtReal(1.0)) {
    good = 1.0;
    double probe = 0.5;
    while (rho(probe) <= ExtReal(1.0)) {
      good = probe;
      probe *= 0.5;
      if (probe < 1.0 / cap) {
        out.status = NormResult::Status::BracketExhausted;
        out.value = good;
        out.note = "norm below 2^-64; reporting bracket cap as an upper bound";
        return out;
      }
    }
    bad = probe;
  } else {
    bad = 1.0;
    double probe = 2.0;
    while (rho(probe) > ExtReal(1.0)) {
      bad = probe;
      probe *= 2.0;
      if (probe > cap) {
        out.status = NormResult::Status::Infinite;
        out.value = HUGE_VAL;
        out.note = "modular exceeds 1 for every lambda up to 2^64";
        return out;
      }
    }
    good = probe;
  }
  int it = 0;
  while (good - bad > rel_tol * good && it < 200) {
    double mid = 0.5 * (good + bad);
    (rho(mid) <= ExtReal(1.0) ? good : bad) = mid;
    ++it;
  }
  out.status = NormResult::Status::Finite;
  out.value = good;  // certified side: rho(v/value) <= 1
  out.iterations = it;
  return out;
}

}  // namespace orlicz
