#include "pamlab/initial_measure.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

namespace pamlab {

namespace {

void check_dim(std::span<const double> v, int dim, const char* what) {
  if (static_cast<int>(v.size()) != dim)
    throw usage_error(std::string(what) + ": expected " +
                      std::to_string(dim) + " coordinates");
}

double sq_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

double sq_dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double gauss_kernel(double t, double sq, int dim) {
  if (t <= 0.0) return 0.0;
  return std::pow(2.0 * M_PI * t, -0.5 * dim) * std::exp(-0.5 * sq / t);
}

std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_double(std::uint64_t h, double x) {
  std::uint64_t bits;
  static_assert(sizeof(bits) == sizeof(x));
  std::memcpy(&bits, &x, sizeof(bits));
  return hash_mix(h, bits);
}

}  // namespace

InitialMeasure::InitialMeasure(int dim) : dim_(dim) {
  if (dim < 1 || dim > 3)
    throw domain_error("InitialMeasure: dimension must be 1..3");
}

void InitialMeasure::add_atom(std::span<const double> location,
                              double weight) {
  check_dim(location, dim_, "add_atom");
  atoms_.push_back({{location.begin(), location.end()}, weight});
}

void InitialMeasure::add_gaussian(std::span<const double> mean, double sigma2,
                                  double weight) {
  check_dim(mean, dim_, "add_gaussian");
  if (!(sigma2 > 0.0)) throw domain_error("add_gaussian: sigma2 must be > 0");
  gaussians_.push_back({{mean.begin(), mean.end()}, sigma2, weight});
}

void InitialMeasure::add_lebesgue(double weight) {
  if (has_lebesgue_)
    lebesgue_weight_ += weight;
  else {
    has_lebesgue_ = true;
    lebesgue_weight_ = weight;
  }
}

InitialMeasure InitialMeasure::total_variation() const {
  InitialMeasure tv(dim_);
  for (const Atom& a : atoms_) tv.add_atom(a.location, std::abs(a.weight));
  for (const GaussianComponent& g : gaussians_)
    tv.add_gaussian(g.mean, g.sigma2, std::abs(g.weight));
  if (has_lebesgue_) tv.add_lebesgue(std::abs(lebesgue_weight_));
  return tv;
}

std::string InitialMeasure::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const Atom& a : atoms_) {
    os << "atom";
    for (double v : a.location) os << ' ' << v;
    os << ' ' << a.weight << '\n';
  }
  for (const GaussianComponent& g : gaussians_) {
    os << "gauss";
    for (double v : g.mean) os << ' ' << v;
    os << ' ' << g.sigma2 << ' ' << g.weight << '\n';
  }
  if (has_lebesgue_) os << "lebesgue " << lebesgue_weight_ << '\n';
  return os.str();
}

InitialMeasure InitialMeasure::from_text(const std::string& text, int dim) {
  InitialMeasure m(dim);
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ';') c = '\n';
  std::istringstream is(normalized);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind.empty() || kind[0] == '#') continue;
    auto read_vec = [&](int n) {
      std::vector<double> v(n);
      for (double& x : v)
        if (!(ls >> x))
          throw usage_error("InitialMeasure::from_text: line " +
                            std::to_string(lineno) + ": missing number");
      return v;
    };
    if (kind == "atom") {
      auto loc = read_vec(dim);
      auto w = read_vec(1);
      m.add_atom(loc, w[0]);
    } else if (kind == "gauss") {
      auto mean = read_vec(dim);
      auto rest = read_vec(2);
      m.add_gaussian(mean, rest[0], rest[1]);
    } else if (kind == "lebesgue") {
      auto w = read_vec(1);
      m.add_lebesgue(w[0]);
    } else {
      throw usage_error("InitialMeasure::from_text: line " +
                        std::to_string(lineno) + ": unknown component '" +
                        kind + "'");
    }
  }
  if (m.empty())
    throw usage_error("InitialMeasure::from_text: no components");
  return m;
}

std::uint64_t InitialMeasure::content_hash() const {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  h = hash_mix(h, static_cast<std::uint64_t>(dim_));
  for (const Atom& a : atoms_) {
    h = hash_mix(h, 1);
    for (double v : a.location) h = hash_double(h, v);
    h = hash_double(h, a.weight);
  }
  for (const GaussianComponent& g : gaussians_) {
    h = hash_mix(h, 2);
    for (double v : g.mean) h = hash_double(h, v);
    h = hash_double(h, g.sigma2);
    h = hash_double(h, g.weight);
  }
  if (has_lebesgue_) {
    h = hash_mix(h, 3);
    h = hash_double(h, lebesgue_weight_);
  }
  return h;
}

InitialMeasure dirac_measure(std::span<const double> location, double weight) {
  InitialMeasure m(static_cast<int>(location.size()));
  m.add_atom(location, weight);
  return m;
}

InitialMeasure dirac_measure_1d(double location, double weight) {
  const double loc[1] = {location};
  return dirac_measure(loc, weight);
}

InitialMeasure lebesgue_measure(int dim, double weight) {
  InitialMeasure m(dim);
  m.add_lebesgue(weight);
  return m;
}

IntegrabilityWitness check_integrability(const InitialMeasure& u0) {
  IntegrabilityWitness out;
  const int d = u0.dim();
  double s = 0.0;
  for (const auto& a : u0.atoms())
    s += std::abs(a.weight) *
         std::exp(-sq_norm(std::span<const double>(a.location)));
  for (const auto& g : u0.gaussians()) {
    const double denom = 1.0 + 2.0 * g.sigma2;
    s += std::abs(g.weight) * std::pow(denom, -0.5 * d) *
         std::exp(-sq_norm(std::span<const double>(g.mean)) / denom);
  }
  if (u0.has_lebesgue())
    s += std::abs(u0.lebesgue_weight()) * std::pow(M_PI, 0.5 * d);
  out.witness = s;
  out.integrable = std::isfinite(s);
  return out;
}

HeatEvolution heat_evolve(const InitialMeasure& u0, double t,
                          std::span<const double> x) {
  if (!(t > 0.0)) throw domain_error("heat_evolve: t must be > 0");
  check_dim(x, u0.dim(), "heat_evolve");
  HeatEvolution out;
  out.t = t;
  out.x.assign(x.begin(), x.end());
  const int d = u0.dim();
  for (const auto& a : u0.atoms()) {
    const double g = gauss_kernel(t, sq_dist(x, a.location), d);
    out.w += a.weight * g;
    out.w_plus += std::abs(a.weight) * g;
  }
  for (const auto& g : u0.gaussians()) {
    const double v = gauss_kernel(t + g.sigma2, sq_dist(x, g.mean), d);
    out.w += g.weight * v;
    out.w_plus += std::abs(g.weight) * v;
  }
  if (u0.has_lebesgue()) {
    out.w += u0.lebesgue_weight();
    out.w_plus += std::abs(u0.lebesgue_weight());
  }
  return out;
}

std::complex<double> oscillatory_heat_integral(const InitialMeasure& u0,
                                               double t,
                                               std::span<const double> x,
                                               std::span<const double> c) {
  if (!(t > 0.0))
    throw domain_error("oscillatory_heat_integral: t must be > 0");
  const int d = u0.dim();
  check_dim(x, d, "oscillatory_heat_integral");
  check_dim(c, d, "oscillatory_heat_integral");
  std::complex<double> out(0.0, 0.0);
  for (const auto& a : u0.atoms()) {
    const double g = gauss_kernel(t, sq_dist(x, a.location), d);
    const double phase = -dot(c, a.location);
    out += a.weight * g * std::polar(1.0, phase);
  }
  for (const auto& g : u0.gaussians()) {
    // Gaussian-times-kernel product collapses to the evolved amplitude and
    // a Gaussian characteristic function at the posterior mean/variance.
    const double amp = gauss_kernel(t + g.sigma2, sq_dist(x, g.mean), d);
    const double s2 = t * g.sigma2 / (t + g.sigma2);
    double phase = 0.0;
    for (int i = 0; i < d; ++i) {
      const double mean_i = (g.sigma2 * x[i] + t * g.mean[i]) / (t + g.sigma2);
      phase -= c[i] * mean_i;
    }
    out += g.weight * amp * std::exp(-0.5 * s2 * sq_norm(c)) *
           std::polar(1.0, phase);
  }
  if (u0.has_lebesgue()) {
    out += u0.lebesgue_weight() * std::exp(-0.5 * t * sq_norm(c)) *
           std::polar(1.0, -dot(c, x));
  }
  return out;
}

}  // namespace pamlab
