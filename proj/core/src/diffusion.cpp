#include "mollify/diffusion.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mollify/errors.hpp"
#include "mollify/fourier.hpp"

namespace mollify {

Conductivity Conductivity::affine(double a, double b, double final_time) {
  if (!(final_time > 0.0) || !std::isfinite(final_time)) {
    throw DomainError("conductivity: final time must be positive");
  }
  if (!(a > 0.0) || !(a + b * final_time > 0.0)) {
    throw DomainError("conductivity: gamma(t) = a + b t must be positive on [0, T]");
  }
  return Conductivity(Affine{a, b}, final_time);
}

Conductivity Conductivity::tabulated(std::vector<double> t, std::vector<double> gamma) {
  if (t.size() != gamma.size() || t.size() < 2) {
    throw DomainError("conductivity: need at least two (t, gamma) samples of equal length");
  }
  if (t.front() != 0.0) throw DomainError("conductivity: table must start at t = 0");
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw DomainError("conductivity: t must be strictly increasing");
  }
  for (double g : gamma) {
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw DomainError("conductivity: nonpositive gamma sample");
    }
  }
  const double final_time = t.back();
  return Conductivity(Table{std::move(t), std::move(gamma)}, final_time);
}

Conductivity Conductivity::from_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open conductivity table '" + path + "'");
  std::string line;
  if (!std::getline(is, line)) throw IoError(path + ": empty conductivity table");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,gamma") throw IoError(path + ": expected header 't,gamma'");
  std::vector<double> t;
  std::vector<double> gamma;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    double tv = 0.0;
    double gv = 0.0;
    char comma = 0;
    if (!(row >> tv >> comma >> gv) || comma != ',') {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed row");
    }
    t.push_back(tv);
    gamma.push_back(gv);
  }
  return tabulated(std::move(t), std::move(gamma));
}

double Conductivity::operator()(double t) const {
  if (const auto* a = std::get_if<Affine>(&form_)) return a->a + a->b * t;
  const auto& table = std::get<Table>(form_);
  if (t <= table.t.front()) return table.gamma.front();
  if (t >= table.t.back()) return table.gamma.back();
  std::size_t i = 1;
  while (table.t[i] < t) ++i;
  const double w = (t - table.t[i - 1]) / (table.t[i] - table.t[i - 1]);
  return (1.0 - w) * table.gamma[i - 1] + w * table.gamma[i];
}

std::string Conductivity::describe() const {
  std::ostringstream os;
  if (const auto* a = std::get_if<Affine>(&form_)) {
    os << "gamma(t) = " << a->a << " + " << a->b << " t on [0, " << final_time_ << "]";
  } else {
    os << "tabulated gamma (" << std::get<Table>(form_).t.size() << " samples) on [0, "
       << final_time_ << "]";
  }
  return os.str();
}

double Conductivity::integrate() const {
  if (const auto* a = std::get_if<Affine>(&form_)) {
    return a->a * final_time_ + 0.5 * a->b * final_time_ * final_time_;
  }
  // Composite Simpson on non-uniform nodes, pairing intervals; an odd final
  // interval is closed with the three-point end correction.
  const auto& t = std::get<Table>(form_).t;
  const auto& f = std::get<Table>(form_).gamma;
  const std::size_t intervals = t.size() - 1;
  if (intervals == 1) return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);

  double sum = 0.0;
  std::size_t i = 0;
  for (; i + 2 <= intervals; i += 2) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    sum += (h0 + h1) / 6.0 *
           ((2.0 - h1 / h0) * f[i] + (h0 + h1) * (h0 + h1) / (h0 * h1) * f[i + 1] +
            (2.0 - h0 / h1) * f[i + 2]);
  }
  if (i < intervals) {
    const std::size_t n = intervals;
    const double h0 = t[n - 1] - t[n - 2];
    const double h1 = t[n] - t[n - 1];
    const double alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
    const double beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
    const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    sum += alpha * f[n] + beta * f[n - 1] - eta * f[n - 2];
  }
  return sum;
}

double integrate_conductivity(const Conductivity& c) { return c.integrate(); }

DiffusionSymbol::DiffusionSymbol(double tau, double gamma_integral)
    : tau_(tau), gamma_integral_(gamma_integral) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("diffusion symbol: tau must lie in (0, 1]");
  if (!(gamma_integral > 0.0) || !std::isfinite(gamma_integral)) {
    throw DomainError("diffusion symbol: Gamma must be positive");
  }
}

double DiffusionSymbol::exact_value(double radius) const {
  if (radius == 0.0) return 1.0;
  const double w = 2.0 * std::numbers::pi * radius;
  const double power = tau_ == 1.0 ? w * w : std::pow(w, 2.0 * tau_);
  return std::exp(-power * gamma_integral_);
}

double DiffusionSymbol::value(double xi1, double xi2) const {
  return value(std::hypot(xi1, xi2));
}

double DiffusionSymbol::truncation_gap() const {
  return truncated() ? exact_value(truncation_radius_) : 0.0;
}

std::vector<double> DiffusionSymbol::sample(const Grid2D& grid) const {
  const RadialShells shells(grid);
  std::vector<double> per_shell(shells.shell_count());
  for (std::size_t s = 0; s < per_shell.size(); ++s) per_shell[s] = value(shells.radius()[s]);
  return shells.expand(per_shell);
}

DiffusionSymbol build_symbol(double tau, double gamma_integral) {
  return DiffusionSymbol(tau, gamma_integral);
}

std::pair<DiffusionSymbol, double> truncated_operator(const DiffusionSymbol& symbol,
                                                      double radius) {
  if (!(radius > 0.0)) throw DomainError("truncated_operator: radius must be positive");
  DiffusionSymbol out = symbol;
  out.truncation_radius_ = radius;
  return {out, out.truncation_gap()};
}

SpectralField apply_forward(const DiffusionSymbol& symbol, const SpectralField& u0_hat) {
  const auto psi = symbol.sample(u0_hat.grid);
  SpectralField out = u0_hat;
  for (std::size_t i = 0; i < psi.size(); ++i) out.values[i] *= psi[i];
  return out;
}

RealField apply_forward(const DiffusionSymbol& symbol, const RealField& u0) {
  return inverse_ft(apply_forward(symbol, forward_ft(u0)));
}

}  // namespace mollify
