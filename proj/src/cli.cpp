#include "formsieve/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numeric>

#include <CLI11.hpp>

#include "formsieve/almost_prime.hpp"
#include "formsieve/congruence.hpp"
#include "formsieve/distribution.hpp"
#include "formsieve/errors.hpp"
#include "formsieve/factor.hpp"
#include "formsieve/forms.hpp"
#include "formsieve/lattice.hpp"
#include "formsieve/primes.hpp"
#include "formsieve/sieve_core.hpp"
#include "formsieve/weight.hpp"

namespace formsieve {
namespace {

bool uses(const std::string& cmd, std::initializer_list<const char*> names) {
  for (const char* n : names) {
    if (cmd == n) return true;
  }
  return false;
}

}  // namespace

Json ExperimentConfig::to_json() const {
  Json j;
  j["command"] = command;
  j["form"] = form;
  j["assume_irreducible"] = assume_irreducible;
  const auto& c = command;
  if (c == "nu") j["d_max"] = d_max;
  if (uses(c, {"classes", "psi-check"})) j["d"] = d;
  if (uses(c, {"psi-check", "family-exp", "lod", "prime-square", "census"})) j["n"] = n;
  if (c == "lod") {
    j["theta"] = theta;
    j["d"] = d;
    j["eta"] = eta;
    j["split_b11"] = split_b11;
  }
  if (c == "family-exp") {
    j["d"] = d;
    j["m1"] = m1;
  }
  if (uses(c, {"psi-check", "family-exp", "lod", "prime-square"})) {
    j["alpha"] = alpha;
    j["tol"] = tol;
  }
  if (uses(c, {"psi-check", "family-exp"})) j["delta"] = delta;
  if (c == "psi-check") {
    j["vmax"] = vmax;
    j["root_index"] = root_index;
  }
  if (c == "prime-square") j["delta1"] = delta1;
  if (c == "census") {
    j["r"] = r;
    j["alpha_exp"] = alpha_exp;
    j["beta_exp"] = beta_exp;
    j["seed"] = seed;
    j["rho_budget"] = rho_budget;
  }
  if (c == "cf") j["zmax"] = zmax;
  j["work_limit"] = work_limit;
  return j;
}

namespace {

std::uint64_t resolve_work_limit(bool flag_given, std::uint64_t flag_value) {
  if (flag_given) return flag_value;
  if (const char* env = std::getenv("FORMSIEVE_WORKLIMIT")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') {
      throw ValidationError("FORMSIEVE_WORKLIMIT is not a nonnegative integer");
    }
    return v;
  }
  return kDefaultWorkLimit;
}

void check_work(double estimate, std::uint64_t limit, const std::string& what) {
  if (estimate > static_cast<double>(limit)) {
    throw WorkLimitError(what + ": estimated " + format_number(estimate) +
                         " inner operations exceed the work limit " + std::to_string(limit) +
                         " (raise it with --work-limit or FORMSIEVE_WORKLIMIT)");
  }
}

CoefficientSequence make_alpha(const std::string& source, std::int64_t big_n) {
  if (source == "primes") return CoefficientSequence::primes(big_n);
  if (source == "ones") return CoefficientSequence::ones(big_n);
  if (source.rfind("csv:", 0) == 0) return CoefficientSequence::from_csv(source.substr(4), big_n);
  throw ValidationError("--alpha must be primes, ones or csv:FILE");
}

Factorization factorize_modulus(std::uint64_t d) {
  Factorization out;
  if (d == 1) return out;
  for (const auto& [p, e] : factor(BigInt(static_cast<unsigned long>(d))).factors) {
    out.push_back({p.get_ui(), e});
  }
  return out;
}

// Runs fn on the file at `path`, or on `fallback` when path is empty.
void with_stream(const std::string& path, std::ostream& fallback,
                 const std::function<void(std::ostream&)>& fn) {
  if (path.empty()) {
    fn(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open " + path + " for writing");
  fn(file);
  if (!file) throw std::runtime_error("write to " + path + " failed");
}

void require_positive(std::int64_t v, const char* name) {
  if (v < 1) throw ValidationError(std::string(name) + " must be at least 1");
}

void cmd_check(const ExperimentConfig&, const BinaryForm& f, std::ostream& out) {
  const auto report = admissibility_check(f);
  with_stream("", out, [&](std::ostream& os) {
    os << Json::parse(report.to_json()).dump(2) << '\n';
  });
}

void cmd_nu(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out) {
  require_positive(c.d_max, "--d-max");
  const double dm = static_cast<double>(c.d_max);
  check_work(dm * dm / std::max(1.0, 2.0 * std::log(dm)), c.work_limit, "nu");
  const auto d_max = static_cast<std::uint64_t>(c.d_max);
  const PrimeSieve sieve(d_max);
  const Polynomial g = f.dehomogenize();
  with_stream(c.out, out, [&](std::ostream& os) {
    CsvWriter csv(os, c.to_json(), {"d", "nu"});
    for (std::uint64_t d = 1; d <= d_max; ++d) {
      csv.cell(d).cell(nu(g, d, sieve.factorize(d)));
      csv.end_row();
    }
  });
}

void cmd_classes(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out) {
  require_positive(c.d, "--d");
  const auto d = static_cast<std::uint64_t>(c.d);
  const RootSet roots = roots_mod(f.dehomogenize(), d, factorize_modulus(d));
  const auto classes = enumerate_classes(f, d, roots);
  with_stream(c.out, out, [&](std::ostream& os) {
    CsvWriter csv(os, c.to_json(), {"d", "rho", "B11", "B12", "B21", "B22"});
    for (const auto& cls : classes) {
      csv.cell(d).cell(cls.rep.n);
      csv.cell(cls.basis.b11()).cell(cls.basis.b12()).cell(cls.basis.b21()).cell(cls.basis.b22());
      csv.end_row();
    }
  });
}

void cmd_psi_check(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out) {
  require_positive(c.d, "--d");
  require_positive(c.n, "--n");
  const auto d = static_cast<std::uint64_t>(c.d);
  const std::int64_t vmax = c.vmax >= 0 ? c.vmax : default_truncation(c.d, c.n, c.delta);
  const double nn = static_cast<double>(c.n);
  check_work(nn * nn / static_cast<double>(d) + nn * static_cast<double>(2 * vmax + 2),
             c.work_limit, "psi-check");
  const RootSet roots = roots_mod(f.dehomogenize(), d, factorize_modulus(d));
  if (c.root_index < 0 || static_cast<std::uint64_t>(c.root_index) >= roots.count()) {
    throw ValidationError("--root-index out of range: nu(d) = " + std::to_string(roots.count()));
  }
  const auto classes = enumerate_classes(f, d, roots);
  const auto& basis = classes[static_cast<std::size_t>(c.root_index)].basis;
  const auto w = WeightFunction::bump(c.tol);
  const auto alpha = make_alpha(c.alpha, c.n);
  const Complex direct = psi_direct(basis, c.n, alpha, w);
  const Complex dual = psi_poisson(basis, c.n, alpha, w, vmax);
  const Complex main = main_term(basis.det, c.n, alpha, w);
  Json s;
  s["d"] = d;
  s["rho"] = classes[static_cast<std::size_t>(c.root_index)].rep.n;
  s["basis"] = {basis.b11(), basis.b12(), basis.b21(), basis.b22()};
  s["vmax"] = vmax;
  s["psi_direct"] = json_complex(direct);
  s["psi_poisson"] = json_complex(dual);
  s["main_term"] = json_complex(main);
  s["abs_error"] = json_number(std::abs(dual - direct));
  s["tolerance"] = json_number(poisson_tolerance(basis, c.n, alpha, w, vmax));
  with_stream(c.out, out, [&](std::ostream& os) { write_summary(os, c.to_json(), s); });
}

void cmd_family(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out,
                unsigned jobs) {
  require_positive(c.n, "--n");
  require_positive(c.d, "--d");
  require_positive(c.m1, "--m1");
  check_work(static_cast<double>(c.d) * static_cast<double>(c.n), c.work_limit, "family-exp");
  const auto spec = build_family(f, c.n, c.d, c.m1, c.delta);
  const auto w = WeightFunction::bump(c.tol);
  const auto alpha = make_alpha(c.alpha, c.n);
  const auto report = family_discrepancy(spec, alpha, w, jobs);
  if (!c.csv.empty()) {
    with_stream(c.csv, out, [&](std::ostream& os) {
      CsvWriter csv(os, c.to_json(), {"lattice_id", "B11", "det", "psi", "main", "abs_err"});
      for (const auto& r : report.records) {
        csv.cell(static_cast<std::uint64_t>(r.id)).cell(r.b11).cell(r.det);
        csv.cell(std::abs(r.psi)).cell(std::abs(r.main)).cell(r.abs_err);
        csv.end_row();
      }
      csv.cell("total").cell("").cell("").cell("").cell(report.trivial_bound).cell(report.total_error);
      csv.end_row();
    });
  }
  Json s;
  s["lattices"] = report.records.size();
  s["total_error"] = json_number(report.total_error);
  s["trivial_bound"] = json_number(report.trivial_bound);
  s["bound_shape"] = json_number(report.bound_shape);
  s["ratio_to_trivial"] = json_number(report.ratio_to_trivial());
  s["ratio_to_shape"] = json_number(report.ratio_to_shape());
  s["bound_case"] = to_string(report.bound_case);
  with_stream(c.out, out, [&](std::ostream& os) { write_summary(os, c.to_json(), s); });
}

void cmd_lod(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out, unsigned jobs) {
  require_positive(c.n, "--n");
  LodOptions options;
  options.split_b11 = c.split_b11;
  options.eta = c.eta;
  options.jobs = jobs;
  options.work_limit = c.work_limit;
  if (c.d > 0) options.explicit_d = c.d;
  const auto w = WeightFunction::bump(c.tol);
  const auto alpha = make_alpha(c.alpha, c.n);
  const auto report = lod_experiment(f, c.n, c.theta, alpha, w, options);
  if (!c.csv.empty()) {
    with_stream(c.csv, out, [&](std::ostream& os) {
      CsvWriter csv(os, c.to_json(), {"d", "nu", "A_re", "A_im", "M_re", "M_im", "abs_err"});
      for (const auto& r : report.records) {
        csv.cell(r.d).cell(r.nu).cell(r.a.real()).cell(r.a.imag());
        csv.cell(r.m.real()).cell(r.m.imag()).cell(r.abs_err);
        csv.end_row();
      }
    });
  }
  Json s;
  s["N"] = report.big_n;
  s["D"] = report.big_d;
  s["theta"] = json_number(report.theta);
  s["in_theorem_regime"] = report.in_theorem_regime;
  s["moduli"] = report.records.size();
  s["total_error"] = json_number(report.total_error);
  s["trivial_scale"] = json_number(report.trivial_scale);
  s["normalized_error"] = json_number(report.normalized_error());
  s["gcd_correction"] = json_number(report.gcd_correction);
  if (report.split) {
    const auto& sp = *report.split;
    s["split"] = {{"eta", json_number(sp.eta)},
                  {"threshold", json_number(sp.threshold)},
                  {"small_classes", sp.small_classes},
                  {"large_classes", sp.large_classes},
                  {"s1_points", sp.s1_points},
                  {"s1_estimate", json_number(sp.s1_estimate)},
                  {"s2", json_number(sp.s2)},
                  {"small_error", json_number(sp.small_error)},
                  {"large_error", json_number(sp.large_error)}};
  }
  with_stream(c.out, out, [&](std::ostream& os) { write_summary(os, c.to_json(), s); });
}

void cmd_prime_square(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out) {
  require_positive(c.n, "--n");
  const auto w = WeightFunction::bump(c.tol);
  const auto alpha = make_alpha(c.alpha, c.n);
  const auto result = prime_square_sum(f, c.n, c.delta1, alpha, w, c.work_limit);
  Json s;
  s["sum"] = json_number(result.sum);
  s["normalized"] = json_number(result.normalized);
  s["primes"] = result.primes;
  with_stream(c.out, out, [&](std::ostream& os) { write_summary(os, c.to_json(), s); });
}

void cmd_census(ExperimentConfig c, const BinaryForm& f, std::ostream& out, unsigned jobs) {
  if (c.n < 0) throw ValidationError("--n must be nonnegative");
  if (c.r == 0) c.r = r_threshold(f.degree());
  const double nn = static_cast<double>(c.n);
  check_work(nn * nn / std::max(1.0, std::log(nn)), c.work_limit, "census");
  CensusOptions options;
  options.r = c.r;
  options.alpha_exp = c.alpha_exp;
  options.beta_exp = c.beta_exp;
  options.jobs = jobs;
  options.keep_records = !c.csv.empty();
  options.factor.seed = c.seed;
  options.factor.rho_budget = c.rho_budget;
  const auto report = census(f, c.n, options);
  if (!c.csv.empty()) {
    with_stream(c.csv, out, [&](std::ostream& os) {
      CsvWriter csv(os, c.to_json(), {"p", "n", "value", "omega"});
      for (const auto& r : report.records) {
        csv.cell(r.p).cell(r.n).cell(r.value.get_str()).cell(r.omega);
        csv.end_row();
      }
    });
  }
  Json counts = Json::object();
  for (const auto& [omega, count] : report.counts_by_omega) counts[std::to_string(omega)] = count;
  Json s;
  s["N"] = report.big_n;
  s["r"] = report.r;
  s["pairs"] = report.pairs;
  s["zero_values"] = report.zero_values;
  s["timeouts"] = report.timeouts;
  s["counts_by_omega"] = counts;
  s["p_r_count"] = report.p_r_count;
  s["tiered_count"] = report.tiered_count;
  s["normalized_density"] = json_number(report.normalized_density);
  s["multiply_back"] = report.multiply_back_ok;
  with_stream(c.out, out, [&](std::ostream& os) { write_summary(os, c.to_json(), s); });
}

void cmd_cf(const ExperimentConfig& c, const BinaryForm& f, std::ostream& out) {
  if (!(c.zmax >= 2.0)) throw ValidationError("--zmax must be at least 2");
  check_work(c.zmax * 20.0, c.work_limit, "cf");
  std::vector<double> grid;
  for (double z = 10.0; z <= c.zmax; z *= 10.0) grid.push_back(z);
  if (grid.empty() || grid.back() < c.zmax) grid.push_back(c.zmax);
  const auto estimates = singular_series(f, grid);
  with_stream(c.out, out, [&](std::ostream& os) {
    CsvWriter csv(os, c.to_json(), {"z", "estimate"});
    for (const auto& [z, v] : estimates) {
      csv.cell(z).cell(v);
      csv.end_row();
    }
  });
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sieve experiments for binary forms", "formsieve"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  ExperimentConfig c;
  std::uint64_t work_limit_flag = 0;
  std::map<std::string, CLI::Option*> work_opts;

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--form", c.form, "coefficients a0,...,ak of sum a_i x^(k-i) y^i")
        ->capture_default_str();
    s->add_flag("--assume-irreducible", c.assume_irreducible,
                "accept forms without a mod-p irreducibility certificate");
    s->add_option("--out", c.out, "output file (default stdout)");
    work_opts[name] = s->add_option("--work-limit", work_limit_flag, "inner-operation budget");
    return s;
  };
  auto add_jobs = [&](CLI::App* s) {
    s->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);
  };
  auto add_alpha = [&](CLI::App* s) {
    s->add_option("--alpha", c.alpha, "primes | ones | csv:FILE")->capture_default_str();
    s->add_option("--tol", c.tol, "quadrature tolerance")->capture_default_str();
  };

  sub("check", "admissibility report as JSON");
  sub("nu", "CSV d,nu for d <= d-max")->add_option("--d-max", c.d_max)->capture_default_str();
  sub("classes", "CSV of the reduced bases of U'(d)")->add_option("--d", c.d)->required();

  auto* psi = sub("psi-check", "direct and Poisson evaluation of one class lattice");
  psi->add_option("--d", c.d)->required();
  psi->add_option("--n", c.n)->capture_default_str();
  psi->add_option("--vmax", c.vmax, "dual truncation (default floor(d N^(delta-1)))");
  psi->add_option("--delta", c.delta)->capture_default_str();
  psi->add_option("--root-index", c.root_index)->capture_default_str();
  add_alpha(psi);

  auto* fam = sub("family-exp", "discrepancy over a family of class lattices");
  fam->add_option("--n", c.n)->capture_default_str();
  fam->add_option("--d", c.d, "D, moduli in [D, 2D)")->required();
  fam->add_option("--m1", c.m1, "M1, B11 in [M1, 2M1)")->required();
  fam->add_option("--delta", c.delta)->capture_default_str();
  fam->add_option("--csv", c.csv, "per-lattice CSV");
  add_alpha(fam);
  add_jobs(fam);

  auto* lod = sub("lod", "sum over d ~ D of |A_d - M_d|");
  lod->add_option("--n", c.n)->capture_default_str();
  lod->add_option("--theta", c.theta)->capture_default_str();
  lod->add_option("--d", c.d, "explicit D instead of floor(N^theta)");
  lod->add_flag("--split-b11", c.split_b11);
  lod->add_option("--eta", c.eta)->capture_default_str();
  lod->add_option("--csv", c.csv, "per-d CSV");
  add_alpha(lod);
  add_jobs(lod);

  auto* ps = sub("prime-square", "sum over primes p of |A_{p^2}|");
  ps->add_option("--n", c.n)->capture_default_str();
  ps->add_option("--delta1", c.delta1)->capture_default_str();
  add_alpha(ps);

  auto* cen = sub("census", "Omega statistics of f(p, n)");
  cen->add_option("--n", c.n)->capture_default_str();
  cen->add_option("--r", c.r, "default floor(3k/4) + 1");
  cen->add_option("--alpha-exp", c.alpha_exp)->capture_default_str();
  cen->add_option("--beta-exp", c.beta_exp)->capture_default_str();
  cen->add_option("--seed", c.seed)->capture_default_str();
  cen->add_option("--rho-budget", c.rho_budget)->capture_default_str();
  cen->add_option("--csv", c.csv, "CSV p,n,value,omega");
  add_jobs(cen);

  sub("cf", "log z prod_{p<z} (1 - nu(p)/p) on z = 10, 100, ...")
      ->add_option("--zmax", c.zmax)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? e.what() : app.help()) << '\n';
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    c.command = chosen->get_name();
    c.work_limit = resolve_work_limit(work_opts[c.command]->count() > 0, work_limit_flag);
    const BinaryForm f = BinaryForm::parse(c.form);
    if (c.command == "check") {
      cmd_check(c, f, out);
      return 0;
    }
    require_admissible(f, c.assume_irreducible);
    const unsigned jobs = c.jobs;
    if (c.command == "nu") cmd_nu(c, f, out);
    else if (c.command == "classes") cmd_classes(c, f, out);
    else if (c.command == "psi-check") cmd_psi_check(c, f, out);
    else if (c.command == "family-exp") cmd_family(c, f, out, jobs);
    else if (c.command == "lod") cmd_lod(c, f, out, jobs);
    else if (c.command == "prime-square") cmd_prime_square(c, f, out);
    else if (c.command == "census") cmd_census(c, f, out, jobs);
    else if (c.command == "cf") cmd_cf(c, f, out);
    return 0;
  } catch (const WorkLimitError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const HypothesisError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const OverflowError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace formsieve
