#include "grp/stoch/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grp::stoch {

ItoProcess ItoProcess::brownian(std::size_t d) {
  ItoProcess p;
  p.dim = d;
  p.x0.assign(d, 0.0);
  p.beta = [d](double, std::span<const double>, std::span<const double>, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t i = 0; i < d; ++i) out[i * d + i] = 1.0;
  };
  return p;
}

ItoProcess ItoProcess::scaled_brownian(double c) {
  ItoProcess p;
  p.beta = [c](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = c; };
  return p;
}

ItoProcess ItoProcess::time() {
  ItoProcess p;
  p.alpha = [](double, std::span<const double>, std::span<const double>, std::span<double> out) { out[0] = 1.0; };
  return p;
}

namespace {

void check_process(const ItoProcess& p) {
  if (p.dim == 0 || p.x0.size() != p.dim) throw std::invalid_argument("ItoProcess: x0 must have dim entries");
}

// Coefficients at step k; missing handles leave zeros.
struct StepCoefficients {
  std::vector<double> beta, alpha, gamma;
  StepCoefficients(std::size_t m, std::size_t d) : beta(m * d), alpha(m), gamma(m * d * d) {}
  void evaluate(const ItoProcess& p, double t, std::span<const double> b, std::span<const double> x) {
    std::fill(beta.begin(), beta.end(), 0.0);
    std::fill(alpha.begin(), alpha.end(), 0.0);
    std::fill(gamma.begin(), gamma.end(), 0.0);
    if (p.beta) p.beta(t, b, x, beta);
    if (p.alpha) p.alpha(t, b, x, alpha);
    if (p.gamma) p.gamma(t, b, x, gamma);
  }
};

}  // namespace

GridPath realize(const ItoProcess& process, const GridPath& b) {
  check_process(process);
  const std::size_t m = process.dim;
  const std::size_t d = b.dim();
  const std::size_t steps = b.grid().n_steps();
  const double h = b.grid().step();
  std::vector<double> x((steps + 1) * m);
  std::copy(process.x0.begin(), process.x0.end(), x.begin());
  StepCoefficients co(m, d);
  std::vector<double> db(d);
  for (std::size_t k = 0; k < steps; ++k) {
    const std::span<const double> xk(x.data() + k * m, m);
    co.evaluate(process, b.grid().time(k), b.at(k), xk);
    b.increment(k, k + 1, db);
    for (std::size_t i = 0; i < m; ++i) {
      double dx = co.alpha[i] * h;
      for (std::size_t j = 0; j < d; ++j) {
        dx += co.beta[i * d + j] * db[j];
        for (std::size_t l = 0; l < d; ++l) dx += co.gamma[(i * d + j) * d + l] * db[j] * db[l];
      }
      x[(k + 1) * m + i] = x[k * m + i] + dx;
    }
  }
  return GridPath(b.grid(), m, std::move(x));
}

IntegrandSpec IntegrandSpec::constant(std::vector<double> value) {
  IntegrandSpec s;
  s.kind = Kind::constant;
  s.value = std::move(value);
  return s;
}

IntegrandSpec IntegrandSpec::coordinate() { return IntegrandSpec{}; }

IntegrandSpec IntegrandSpec::smooth_scalar(std::function<double(double)> f, std::function<double(double)> df) {
  IntegrandSpec s;
  s.kind = Kind::smooth_of_b;
  s.f = [f = std::move(f)](std::span<const double> x, std::span<double> y) { y[0] = f(x[0]); };
  s.df = [df = std::move(df)](std::span<const double> x, std::span<double> y) { y[0] = df(x[0]); };
  return s;
}

IntegrandSpec IntegrandSpec::ito(ItoProcess process) {
  IntegrandSpec s;
  s.kind = Kind::ito_process;
  s.process = std::move(process);
  return s;
}

GridPath realize(const IntegrandSpec& spec, const GridPath& b) {
  const std::size_t d = b.dim();
  switch (spec.kind) {
    case IntegrandSpec::Kind::constant:
      if (spec.value.empty() || spec.value.size() % d != 0)
        throw std::invalid_argument("IntegrandSpec: constant needs n*d entries");
      return GridPath::constant(b.grid(), spec.value);
    case IntegrandSpec::Kind::coordinate:
      return b;
    case IntegrandSpec::Kind::smooth_of_b: {
      if (!spec.f) throw std::invalid_argument("IntegrandSpec: missing map");
      const std::size_t m = spec.out_dim * d;
      std::vector<double> y(b.n_points() * m);
      for (std::size_t k = 0; k < b.n_points(); ++k) spec.f(b.at(k), std::span<double>(y.data() + k * m, m));
      if (!std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); }))
        throw std::invalid_argument("IntegrandSpec: non-finite integrand value");
      return GridPath(b.grid(), m, std::move(y));
    }
    case IntegrandSpec::Kind::ito_process:
      return realize(spec.process, b);
  }
  throw std::invalid_argument("IntegrandSpec: unknown kind");
}

ControlledPath realize_controlled(const IntegrandSpec& spec, std::shared_ptr<const RoughPath> rp) {
  if (!rp) throw std::invalid_argument("realize_controlled: missing rough path");
  const GridPath& b = rp->path();
  const std::size_t d = b.dim();
  GridPath y = realize(spec, b);
  if (y.dim() % d != 0) throw std::invalid_argument("dimension mismatch: integrand needs n*d components");
  const std::size_t n = y.dim() / d;
  const std::size_t width = n * d * d;
  std::vector<double> yp(b.n_points() * width, 0.0);
  switch (spec.kind) {
    case IntegrandSpec::Kind::constant:
      break;
    case IntegrandSpec::Kind::coordinate:
      for (std::size_t k = 0; k < b.n_points(); ++k)
        for (std::size_t c = 0; c < d; ++c) yp[k * width + c * d + c] = 1.0;
      break;
    case IntegrandSpec::Kind::smooth_of_b:
      if (!spec.df) throw std::invalid_argument("IntegrandSpec: missing derivative");
      for (std::size_t k = 0; k < b.n_points(); ++k) spec.df(b.at(k), std::span<double>(yp.data() + k * width, width));
      break;
    case IntegrandSpec::Kind::ito_process: {
      for (std::size_t k = 0; k < b.n_points(); ++k) {
        std::fill(yp.begin() + static_cast<std::ptrdiff_t>(k * width),
                  yp.begin() + static_cast<std::ptrdiff_t>((k + 1) * width), 0.0);
        if (spec.process.beta)
          spec.process.beta(b.grid().time(k), b.at(k), y.at(k), std::span<double>(yp.data() + k * width, width));
      }
      break;
    }
  }
  const TimeGrid grid = b.grid();
  return ControlledPath(std::move(y), GridPath(grid, width, std::move(yp)), std::move(rp), n);
}

C2Function C2Function::scalar(std::function<double(double)> f, std::function<double(double)> df,
                               std::function<double(double)> d2f) {
  C2Function phi;
  phi.value = [f = std::move(f)](std::span<const double> x) { return f(x[0]); };
  phi.gradient = [df = std::move(df)](std::span<const double> x, std::span<double> g) { g[0] = df(x[0]); };
  phi.hessian = [d2f = std::move(d2f)](std::span<const double> x, std::span<double> h) { h[0] = d2f(x[0]); };
  return phi;
}

C2Function C2Function::power(int p) {
  if (p < 0) throw std::invalid_argument("C2Function::power: exponent must be >= 0");
  const auto pw = [](double x, int e) { return e <= 0 ? (e == 0 ? 1.0 : 0.0) : std::pow(x, e); };
  return scalar([=](double x) { return pw(x, p); }, [=](double x) { return p * pw(x, p - 1); },
                [=](double x) { return p * (p - 1) * pw(x, p - 2); });
}

C2Function C2Function::affine(double slope, double intercept) {
  return scalar([=](double x) { return slope * x + intercept; }, [=](double) { return slope; },
                [](double) { return 0.0; });
}

ItoFormulaResidual ito_formula_residual(const C2Function& phi, const ItoProcess& process, const GridPath& b) {
  check_process(process);
  if (phi.dim != process.dim) throw std::invalid_argument("ito_formula_residual: Phi and X dimensions differ");
  const GridPath x = realize(process, b);
  const std::size_t m = process.dim;
  const std::size_t d = b.dim();
  const std::size_t steps = b.grid().n_steps();
  const double h = b.grid().step();
  StepCoefficients co(m, d);
  std::vector<double> grad(m), hess(m * m), db(d), bdb(m);
  ItoFormulaResidual out{0.0, 0.0, std::vector<double>(steps + 1, 0.0)};
  const double phi0 = phi.value(x.at(0));
  double sum = 0.0, comp = 0.0;
  for (std::size_t k = 0; k < steps; ++k) {
    co.evaluate(process, b.grid().time(k), b.at(k), x.at(k));
    phi.gradient(x.at(k), grad);
    phi.hessian(x.at(k), hess);
    b.increment(k, k + 1, db);
    double dbterm = 0.0, dt_term = 0.0, qv_term = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      bdb[i] = 0.0;
      for (std::size_t j = 0; j < d; ++j) bdb[i] += co.beta[i * d + j] * db[j];
      dbterm += grad[i] * bdb[i];
      dt_term += grad[i] * co.alpha[i] * h;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t l = 0; l < d; ++l) qv_term += grad[i] * co.gamma[(i * d + j) * d + l] * db[j] * db[l];
    }
    // 1/2 D^2 Phi (beta dB, beta dB) = 1/2 sum D^2 Phi beta beta^T d<B>
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t r = 0; r < m; ++r) qv_term += 0.5 * hess[i * m + r] * bdb[i] * bdb[r];
    for (double term : {dbterm, dt_term, qv_term}) {
      const double t = sum + term;
      comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    }
    const double r = phi.value(x.at(k + 1)) - phi0 - (sum + comp);
    out.residuals[k + 1] = r;
    out.max_residual = std::max(out.max_residual, std::abs(r));
  }
  out.terminal_residual = out.residuals.back();
  return out;
}

}  // namespace grp::stoch
