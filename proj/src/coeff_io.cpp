#include "coeff_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace dsm {

std::string format_real(Real v) {
  char buf[64];
#ifdef DSM_EXTENDED_REAL
  std::snprintf(buf, sizeof buf, "%.21Lg", v);
#else
  std::snprintf(buf, sizeof buf, "%.17g", v);
#endif
  return buf;
}

namespace {

Real parse_real(const std::string& s) {
#ifdef DSM_EXTENDED_REAL
  return std::strtold(s.c_str(), nullptr);
#else
  return std::strtod(s.c_str(), nullptr);
#endif
}

[[noreturn]] void fail(const std::string& what) {
  throw ValidationError("malformed coefficient file: " + what);
}

}  // namespace

void write_coefficients(std::ostream& os, const CoefficientSet& set) {
  os << "dsm-coefficients 1\n";
  os << "omega " << format_real(set.omega) << " " << set.omega_token << "\n";
  os << "tau " << format_real(set.tau) << "\n";
  os << "nu " << format_real(set.nu) << "\n";
  os << "kmax " << set.k_max << "\n";
  os << "alpha " << set.alpha << "\n";
  os << "precision " << set.precision << "\n";
  int n_modes = 0;
  for (int k = 0; k <= set.potential.degree(); ++k)
    if (set.potential.mode(k) != Complex(0)) ++n_modes;
  os << "potential " << n_modes << "\n";
  for (int k = 0; k <= set.potential.degree(); ++k) {
    const Complex c = set.potential.mode(k);
    if (c == Complex(0)) continue;
    // Reality symmetry: c_k = (cos_amp - i sin_amp)/2 for k > 0, c_0 = cos_amp.
    const Real cos_amp = k == 0 ? c.real() : 2 * c.real();
    const Real sin_amp = k == 0 ? Real(0) : -2 * c.imag();
    os << "mode " << k << " " << format_real(cos_amp) << " "
       << format_real(sin_amp) << "\n";
  }
  os << "N " << set.hull.order() << "\n";
  for (int n = 0; n <= set.hull.order(); ++n) {
    const TrigPoly& un = set.hull.u.coeff(n);
    int nm = 0;
    for (int k = -un.degree(); k <= un.degree(); ++k)
      if (un.mode(k) != Complex(0)) ++nm;
    os << "order " << n << " " << format_real(set.hull.mu.coeff(n)) << " " << nm
       << "\n";
    for (int k = -un.degree(); k <= un.degree(); ++k) {
      const Complex c = un.mode(k);
      if (c == Complex(0)) continue;
      os << "u " << k << " " << format_real(c.real()) << " "
         << format_real(c.imag()) << "\n";
    }
  }
  os << "end\n";
}

CoefficientSet read_coefficients(std::istream& is) {
  CoefficientSet set;
  std::string line, key;
  if (!std::getline(is, line) || line != "dsm-coefficients 1")
    fail("bad magic line");

  int n_orders = -1;
  std::vector<TrigPoly> u;
  std::vector<Real> mu;
  std::vector<TrigPoly::CosSinMode> pot_modes;
  std::vector<std::pair<int, Complex>> raw_modes;
  int pending_modes = 0;
  int target_order = -1;
  bool done = false;

  const auto flush_order = [&] {
    if (target_order < 0) return;
    if (pending_modes != 0) fail("mode count mismatch");
    int deg = 0;
    for (const auto& [k, v] : raw_modes) deg = std::max(deg, std::abs(k));
    TrigPolyBuilder b(deg);
    for (const auto& [k, v] : raw_modes) b.at(k) = v;
    u[size_t(target_order)] = std::move(b).build();
    raw_modes.clear();
    target_order = -1;
  };

  while (!done && std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> key;
    if (key == "omega") {
      std::string v, tok;
      ls >> v >> tok;
      set.omega = parse_real(v);
      set.omega_token = tok;
    } else if (key == "tau" || key == "nu") {
      std::string v;
      ls >> v;
      (key == "tau" ? set.tau : set.nu) = parse_real(v);
    } else if (key == "kmax") {
      ls >> set.k_max;
    } else if (key == "alpha") {
      ls >> set.alpha;
    } else if (key == "precision") {
      ls >> set.precision;
    } else if (key == "potential") {
      int n = 0;
      ls >> n;
    } else if (key == "mode") {
      TrigPoly::CosSinMode m{};
      std::string c, s;
      ls >> m.k >> c >> s;
      m.cos_amp = parse_real(c);
      m.sin_amp = parse_real(s);
      pot_modes.push_back(m);
    } else if (key == "N") {
      ls >> n_orders;
      if (n_orders < 0) fail("negative order");
      u.assign(size_t(n_orders) + 1, TrigPoly());
      mu.assign(size_t(n_orders) + 1, Real(0));
    } else if (key == "order") {
      flush_order();
      int n = -1, nm = -1;
      std::string muv;
      ls >> n >> muv >> nm;
      if (n_orders < 0 || n < 0 || n > n_orders) fail("order index out of range");
      if (nm < 0) fail("bad mode count");
      mu[size_t(n)] = parse_real(muv);
      pending_modes = nm;
      target_order = n;
    } else if (key == "u") {
      if (target_order < 0 || pending_modes <= 0) fail("stray mode record");
      int k = 0;
      std::string re, im;
      ls >> k >> re >> im;
      raw_modes.emplace_back(k, Complex(parse_real(re), parse_real(im)));
      --pending_modes;
    } else if (key == "end") {
      flush_order();
      done = true;
    } else {
      fail("unknown record " + key);
    }
  }
  if (!done) fail("missing end record");
  if (n_orders < 0) fail("missing order count");

  set.potential = TrigPoly::from_cos_sin(pot_modes);
  EpsSeries us(n_orders);
  ScalarSeries mus(n_orders);
  for (int n = 0; n <= n_orders; ++n) {
    us.coeff(n) = u[size_t(n)];
    mus.coeff(n) = mu[size_t(n)];
  }
  set.hull = HullExpansion{std::move(us), std::move(mus)};
  return set;
}

void write_coefficients_file(const std::string& path,
                             const CoefficientSet& set) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  write_coefficients(os, set);
  if (!os) throw ValidationError("write failed for " + path);
}

CoefficientSet read_coefficients_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open " + path);
  return read_coefficients(is);
}

MapSpec map_from_set(const CoefficientSet& set) {
  return MapSpec(set.potential, set.alpha,
                 Frequency(set.omega, set.nu, set.tau, set.k_max));
}

bool headers_compatible(const CoefficientSet& a, const CoefficientSet& b) {
  if (a.omega != b.omega || a.tau != b.tau || a.alpha != b.alpha) return false;
  const int d = std::max(a.potential.degree(), b.potential.degree());
  for (int k = -d; k <= d; ++k)
    if (a.potential.mode(k) != b.potential.mode(k)) return false;
  return true;
}

}  // namespace dsm
