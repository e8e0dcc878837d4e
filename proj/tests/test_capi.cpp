#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "molspec/molspec.h"

namespace {

struct Molecule {
  ms_molecule* h = nullptr;
  Molecule(double omega_e, double gamma) { REQUIRE(ms_molecule_create(omega_e, gamma, &h) == MS_OK); }
  ~Molecule() { ms_molecule_destroy(h); }
  Molecule& mode(double nu, double gv, double lambda) {
    REQUIRE(ms_molecule_add_mode(h, nu, gv, lambda) == MS_OK);
    return *this;
  }
};

struct Result {
  ms_result* r = nullptr;
  ~Result() { ms_result_destroy(r); }
  std::vector<double> array(const char* name) const {
    const double* d = nullptr;
    size_t n = 0;
    REQUIRE(ms_result_array(r, name, &d, &n) == MS_OK);
    return std::vector<double>(d, d + n);
  }
  double scalar(const char* name) const {
    double v = 0.0;
    REQUIRE(ms_result_scalar(r, name, &v) == MS_OK);
    return v;
  }
  std::vector<std::string> flags() const {
    std::vector<std::string> f;
    for (size_t i = 0; i < ms_result_flag_count(r); ++i) f.emplace_back(ms_result_flag(r, i));
    return f;
  }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = a + (b - a) * i / (n - 1);
  return g;
}

ms_fret_params fig2c_params() {
  ms_fret_params p{};
  p.omega_dd = 15.0;
  p.delta = 500.0;
  return p;
}

}  // namespace

TEST_CASE("c api: version, status names and defaults") {
  CHECK(std::string(ms_version()) == "1.0.0");
  CHECK(std::string(ms_status_name(MS_OK)) == "ok");
  CHECK(std::string(ms_status_name(MS_ERR_NOT_FOUND)) == "not-found");
  for (int s = MS_ERR_INVALID_ARGUMENT; s <= MS_ERR_INTERNAL; ++s)
    CHECK(std::strlen(ms_status_name(static_cast<ms_status>(s))) > 0);
  const ms_policy p = ms_default_policy();
  CHECK(p.epsilon == 1e-10);
  CHECK(p.max_order > 0);
  const ms_oracle_options o = ms_default_oracle_options();
  CHECK(o.vib_dims == nullptr);
  CHECK(o.factorized == 1);
}

TEST_CASE("c api: handles and null arguments") {
  CHECK(ms_molecule_create(0.0, 1.0, nullptr) == MS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ms_last_error()).find("out must not be null") != std::string::npos);
  CHECK(ms_molecule_add_mode(nullptr, 1.0, 1.0, 0.1) == MS_ERR_INVALID_ARGUMENT);
  CHECK(ms_molecule_mode_count(nullptr) == 0);
  ms_molecule_destroy(nullptr);
  ms_result_destroy(nullptr);

  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 0.5).mode(20.0, 2.0, 0.2);
  CHECK(ms_molecule_mode_count(m.h) == 2);

  const double grid[2] = {0.0, 1.0};
  CHECK(ms_absorption_population(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.1}, grid, 2, ms_default_policy(), nullptr) ==
        MS_ERR_INVALID_ARGUMENT);
  ms_result* r = reinterpret_cast<ms_result*>(1);
  CHECK(ms_absorption_population(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.1}, nullptr, 2, ms_default_policy(), &r) ==
        MS_ERR_INVALID_ARGUMENT);
  CHECK(r == nullptr);
  CHECK(std::string(ms_last_error()).find("grid must not be null") != std::string::npos);
}

TEST_CASE("c api: validation reports field names") {
  Molecule m(0.0, 1.0);
  m.mode(-1.0, 1.0, 0.5);
  Result v;
  REQUIRE(ms_molecule_validate(m.h, &v.r) == MS_OK);
  CHECK(v.scalar("errors") >= 1.0);
  bool named = false;
  for (const auto& f : v.flags()) named |= f.find("modes[0].nu") != std::string::npos;
  CHECK(named);

  Result mv;
  REQUIRE(ms_mode_validate(-1.0, 1.0, 0.5, &mv.r) == MS_OK);
  REQUIRE(mv.flags().size() == 1);
  CHECK(mv.flags()[0].rfind("VibrationalMode.nu:", 0) == 0);
  CHECK(mv.array("severity") == std::vector<double>{1.0});

  Result cv;
  REQUIRE(ms_cavity_validate(ms_cavity{0.0, -1.0, 1.0}, &cv.r) == MS_OK);
  CHECK(cv.scalar("errors") == 1.0);

  Result dv;
  REQUIRE(ms_drive_validate(ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.5}, 1.0, &dv.r) == MS_OK);
  CHECK(dv.scalar("errors") == 0.0);
  CHECK(dv.array("severity") == std::vector<double>{0.0});

  Result a;
  const double grid[2] = {0.0, 1.0};
  CHECK(ms_absorption_population(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.1}, grid, 2, ms_default_policy(), &a.r) ==
        MS_ERR_INVALID_ARGUMENT);
  CHECK(std::string(ms_last_error()).find("nu") != std::string::npos);
}

TEST_CASE("c api: two-level absorption matches the Lorentzian") {
  Molecule m(0.0, 1.0);
  const auto grid = linspace(-10.0, 10.0, 101);
  Result r;
  REQUIRE(ms_absorption_population(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.1}, grid.data(), grid.size(),
                                   ms_default_policy(), &r.r) == MS_OK);
  const auto v = r.array("values");
  REQUIRE(v.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(v[i] == doctest::Approx(0.01 / (1.0 + grid[i] * grid[i])).epsilon(1e-12));
  CHECK(r.scalar("retained_weight") == 1.0);
  CHECK(r.array("grid") == grid);
}

TEST_CASE("c api: result lookup by index and missing names") {
  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 0.5);
  const auto grid = linspace(-5.0, 5.0, 11);
  Result r;
  REQUIRE(ms_emission_transient(m.h, 1.0, grid.data(), grid.size(), ms_default_policy(), &r.r) == MS_OK);
  REQUIRE(ms_result_array_count(r.r) >= 2);
  CHECK(std::string(ms_result_array_name(r.r, 0)) == "grid");
  CHECK(ms_result_array_name(r.r, 99) == nullptr);
  CHECK(ms_result_scalar_count(r.r) >= 1);
  const double* d = nullptr;
  size_t n = 0;
  CHECK(ms_result_array(r.r, "nope", &d, &n) == MS_ERR_NOT_FOUND);
  CHECK(std::string(ms_last_error()).find("nope") != std::string::npos);
  double x = 0.0;
  CHECK(ms_result_scalar(r.r, "nope", &x) == MS_ERR_NOT_FOUND);
  CHECK(ms_result_scalar(r.r, nullptr, &x) == MS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("c api: series helpers") {
  double lam = 0.0;
  REQUIRE(ms_huang_rhys_from_geometry(2.0, 2.0, 1.0, &lam) == MS_OK);
  CHECK(lam == doctest::Approx(1.4142135623730950488).epsilon(1e-15));
  CHECK(ms_huang_rhys_from_geometry(2.0, 1.0, 1.0, nullptr) == MS_ERR_INVALID_ARGUMENT);

  const double tau[1] = {0.3};
  Result c;
  REQUIRE(ms_displacement_correlation(10.0, 1.0, 0.5, tau, 1, &c.r) == MS_OK);
  CHECK(c.array("real")[0] == doctest::Approx(0.64811138570568618091).epsilon(1e-12));
  CHECK(c.array("imag")[0] == doctest::Approx(-0.016942941504692021556).epsilon(1e-10));

  const double w[1] = {10.0};
  Result f;
  REQUIRE(ms_force_spectrum(10.0, 1.0, 0.5, 0.0, w, 1, &f.r) == MS_OK);
  CHECK(f.array("values")[0] == doctest::Approx(50.0).epsilon(1e-12));

  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 1.0);
  Result t;
  REQUIRE(ms_truncation_report(m.h, ms_policy{1e-12, 200}, &t.r) == MS_OK);
  CHECK(t.array("mode_orders") == std::vector<double>{14.0});
  CHECK(t.scalar("retained_weight") >= 1.0 - 1e-12);
}

TEST_CASE("c api: truncation failure maps to its status") {
  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 2.0);
  Result t;
  CHECK(ms_truncation_report(m.h, ms_policy{1e-12, 3}, &t.r) == MS_ERR_TRUNCATION);
  CHECK(t.r == nullptr);
  CHECK(std::string(ms_last_error()).find("retained weight") != std::string::npos);
}

TEST_CASE("c api: steady emission exposes the elastic part") {
  Molecule m(0.0, 1.0);
  const double grid[3] = {-1.0, 0.0, 1.0};
  Result r;
  REQUIRE(ms_emission_steady(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.5, 0.05}, grid, 3, ms_default_policy(), &r.r) ==
          MS_OK);
  CHECK(r.scalar("coherent_intensity") == doctest::Approx(0.0025 / 1.25).epsilon(1e-12));
  for (double v : r.array("values")) CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("c api: cavity transmission and polariton rates") {
  Molecule m(0.0, 0.1);
  m.mode(4.0, 1.5, 0.3);
  const ms_cavity cav{0.36, 1.0, 2.0};
  const auto grid = linspace(-4.0, 4.0, 81);
  Result t;
  REQUIRE(ms_cavity_transmission(m.h, cav, ms_drive{MS_DRIVE_CAVITY, 0.0, 0.01}, grid.data(), grid.size(),
                                 ms_default_policy(), &t.r) == MS_OK);
  const auto v = t.array("values"), re = t.array("real"), im = t.array("imag");
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(v[i] == doctest::Approx(re[i] * re[i] + im[i] * im[i]));

  Result wrong;
  CHECK(ms_cavity_transmission(m.h, cav, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.01}, grid.data(), grid.size(),
                               ms_default_policy(), &wrong.r) == MS_ERR_INVALID_ARGUMENT);

  Result p;
  REQUIRE(ms_polariton_rates(m.h, cav, &p.r) == MS_OK);
  CHECK(p.scalar("omega_plus") > p.scalar("omega_minus"));
  CHECK(p.scalar("kappa_ul") > 0.0);
  CHECK(p.scalar("upper_half_width") == doctest::Approx(0.55 + 0.5 * p.scalar("kappa_ul")));
}

TEST_CASE("c api: branching and Purcell advisories") {
  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 0.5);
  Result b;
  REQUIRE(ms_branching(m.h, nullptr, &b.r) == MS_OK);
  CHECK(b.scalar("alpha") == std::exp(-0.25));
  double x = 0.0;
  CHECK(ms_result_scalar(b.r, "alpha_cav", &x) == MS_ERR_NOT_FOUND);

  const ms_cavity cav{0.0, 1000.0, 100.0};
  Result c;
  REQUIRE(ms_branching(m.h, &cav, &c.r) == MS_OK);
  CHECK(c.scalar("alpha_cav") > c.scalar("alpha"));
  CHECK(c.scalar("c00") > 0.0);

  Result d;
  REQUIRE(ms_dephasing_estimate(m.h, &d.r) == MS_OK);
  CHECK(d.array("per_mode").size() == 1);
}

TEST_CASE("c api: transfer rates and pump-probe") {
  Molecule d(0.0, 1.0), a(0.0, 1.0);
  d.mode(250.0, 30.0, 0.6);
  a.mode(250.0, 30.0, 0.4);
  Result k;
  REQUIRE(ms_fret_rate_direct(d.h, a.h, fig2c_params(), ms_default_policy(), &k.r) == MS_OK);
  CHECK(k.scalar("kappa_et") == doctest::Approx(0.67705783374683609376).epsilon(1e-10));

  Result nocav;
  CHECK(ms_fret_rate_cavity(d.h, a.h, fig2c_params(), ms_default_policy(), &nocav.r) == MS_ERR_INVALID_ARGUMENT);

  ms_fret_params p = fig2c_params();
  p.has_cavity = 1;
  p.kappa = 1000.0;
  Result zero;
  REQUIRE(ms_fret_rate_cavity(d.h, a.h, p, ms_default_policy(), &zero.r) == MS_OK);
  CHECK(zero.scalar("j_cavity_pure") == 0.0);
  CHECK(zero.scalar("kappa_et") == doctest::Approx(k.scalar("kappa_et")).epsilon(1e-12));

  const auto t = linspace(0.0, 0.5, 6);
  Result pp;
  REQUIRE(ms_pump_probe(d.h, a.h, fig2c_params(), 1.0, t.data(), t.size(), ms_default_policy(), &pp.r) == MS_OK);
  const auto pd = pp.array("P_D");
  const double kd = 2.0 + k.scalar("kappa_et");
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(pd[i] == doctest::Approx(std::exp(-kd * t[i])).epsilon(1e-12));
  CHECK(pp.array("P_A_tangent")[1] == doctest::Approx(k.scalar("kappa_et") * 0.1));
}

TEST_CASE("c api: oracle entry points") {
  Molecule m(0.0, 1.0);
  m.mode(10.0, 1.0, 0.3);
  const int dims[1] = {6};
  ms_oracle_options opt = ms_default_oracle_options();
  opt.vib_dims = dims;
  opt.n_vib_dims = 1;
  const double grid[3] = {-1.0, 0.0, 1.0};
  Result o;
  REQUIRE(ms_oracle_absorption(m.h, 0.05, grid, 3, &opt, &o.r) == MS_OK);
  Result a;
  REQUIRE(ms_absorption_population(m.h, ms_drive{MS_DRIVE_MOLECULE, 0.0, 0.05}, grid, 3, ms_default_policy(), &a.r) ==
          MS_OK);
  CHECK(o.array("values")[1] == doctest::Approx(a.array("values")[1]).epsilon(0.01));

  opt.n_vib_dims = 2;
  Result bad;
  CHECK(ms_oracle_absorption(m.h, 0.05, grid, 3, &opt, &bad.r) == MS_ERR_LAYOUT);
  opt.n_vib_dims = 1;
  opt.cavity_dim = 3;
  CHECK(ms_oracle_absorption(m.h, 0.05, grid, 3, &opt, &bad.r) == MS_ERR_LAYOUT);
}

TEST_CASE("c api: Lorentzian fit") {
  const auto grid = linspace(-5.0, 5.0, 201);
  std::vector<double> v;
  for (double w : grid) v.push_back(3.0 / (0.25 + (w - 0.5) * (w - 0.5)));
  Result f;
  REQUIRE(ms_fit_lorentzian(grid.data(), v.data(), v.size(), -2.0, 3.0, &f.r) == MS_OK);
  CHECK(f.scalar("center") == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(f.scalar("half_width") == doctest::Approx(0.5).epsilon(1e-8));
  Result e;
  CHECK(ms_fit_lorentzian(grid.data(), v.data(), v.size(), 10.0, 11.0, &e.r) == MS_ERR_FIT);
}
