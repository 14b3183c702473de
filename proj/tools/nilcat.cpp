#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nilcat/catenoid.hpp"
#include "nilcat/cmc.hpp"
#include "nilcat/csv.hpp"
#include "nilcat/errors.hpp"
#include "nilcat/helicoid.hpp"
#include "nilcat/mesh.hpp"
#include "nilcat/period.hpp"
#include "nilcat/verify.hpp"

using namespace nilcat;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Job {
  double alpha = 1.0;
  std::string alpha_sweep;
  double tol = kDefaultProfileTol;
  int nu = 64;
  int nv = 64;
  std::string v_range;
  std::vector<double> section_c{0.0};
  std::string format;
  std::string out;
  std::string curves_out;
  bool no_limits = false;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string p; std::getline(ss, p, sep);) parts.push_back(p);
  return parts;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(x)) throw std::invalid_argument(s);
    return x;
  } catch (const std::exception&) {
    throw UsageError(what + ": '" + s + "' is not a finite number");
  }
}

std::pair<double, double> parse_v_range(const std::string& s, std::pair<double, double> dflt) {
  if (s.empty()) return dflt;
  const auto p = split(s, ':');
  if (p.size() != 2) throw UsageError("--v-range expects lo:hi, e.g. --v-range -3:3");
  const double lo = to_double(p[0], "--v-range"), hi = to_double(p[1], "--v-range");
  if (!(lo < hi)) throw UsageError("--v-range needs lo < hi");
  return {lo, hi};
}

std::vector<double> alphas_of(const Job& job) {
  if (job.alpha_sweep.empty()) return {job.alpha};
  const auto p = split(job.alpha_sweep, ':');
  if (p.size() != 3) throw UsageError("--alpha-sweep expects a:b:n, e.g. --alpha-sweep 0.5:5:10");
  const double a = to_double(p[0], "--alpha-sweep"), b = to_double(p[1], "--alpha-sweep");
  const double nd = to_double(p[2], "--alpha-sweep");
  const int n = static_cast<int>(nd);
  if (n < 1 || n != nd) throw UsageError("--alpha-sweep: n must be a positive integer");
  if (!(a > 0 && b > 0)) throw UsageError("--alpha-sweep: alpha values must be positive");
  std::vector<double> out;
  for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
  return out;
}

void emit(const Job& job, const std::string& text) {
  if (job.out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(job.out, text);
  }
}

std::string format_or(const Job& job, const std::string& dflt) {
  if (!job.format.empty()) return job.format;
  if (!job.out.empty()) {
    const auto ext = std::filesystem::path(job.out).extension().string();
    if (ext.size() > 1) return ext.substr(1);
  }
  return dflt;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed,
                    const std::string& cmd) {
  for (const char* a : allowed)
    if (f == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError(cmd + ": --format must be one of " + list + " (got '" + f + "')");
}

void write_mesh_job(const Job& job, const Mesh& mesh, const std::string& cmd) {
  if (job.out.empty()) throw UsageError(cmd + ": --out <file.obj|file.ply> is required");
  const auto f = format_or(job, "obj");
  require_format(f, {"obj", "ply"}, cmd);
  write_mesh(mesh, mesh_format_from_string(f), job.out);
  json j;
  j["command"] = cmd;
  j["alpha"] = job.alpha;
  j["vertices"] = mesh.vertices.size();
  j["faces"] = mesh.faces.size();
  j["euler_characteristic"] = euler_characteristic(mesh);
  j["boundary_loops"] = boundary_loop_count(mesh);
  std::cout << j.dump(2) << "\n";
}

int run_solve_period(const Job& job) {
  const auto alphas = alphas_of(job);
  const auto f = format_or(job, alphas.size() == 1 && job.alpha_sweep.empty() ? "json" : "csv");
  require_format(f, {"json", "csv"}, "solve-period");
  const auto rows = period_sweep(alphas, std::min(job.tol, kDefaultQuadratureTol));
  if (f == "csv") {
    std::ostringstream os;
    write_sweep_csv(os, rows);
    emit(job, os.str());
  } else {
    auto row_json = [](const SweepRow& r) {
      json j;
      j["alpha"] = r.alpha;
      j["theta_tilde"] = r.theta_tilde;
      j["L_residual"] = r.L_residual;
      return j;
    };
    json j;
    if (rows.size() == 1 && job.alpha_sweep.empty()) {
      j = row_json(rows[0]);
    } else {
      j = json::array();
      for (const auto& r : rows) j.push_back(row_json(r));
    }
    emit(job, j.dump(2) + "\n");
  }
  bool ok = true;
  for (const auto& r : rows) ok &= std::abs(r.L_residual) <= 1e-10;
  if (!ok) std::cerr << "solve-period: |L_residual| exceeds 1e-10\n";
  return ok ? 0 : 1;
}

int run_mesh_catenoid(const Job& job) {
  const auto [lo, hi] = parse_v_range(job.v_range, {-3.0, 3.0});
  const auto m = build_catenoid(job.alpha, job.tol);
  write_mesh_job(job, mesh_catenoid(m, {lo, hi, job.nu, job.nv, true}), "mesh-catenoid");
  return 0;
}

int run_mesh_helicoid(const Job& job) {
  const auto [lo, hi] = parse_v_range(job.v_range, {-2.0, 2.0});
  const HelicoidModel h(job.alpha, job.tol);
  write_mesh_job(job, mesh_helicoid(h, -h.U(), h.U(), lo, hi, job.nu, job.nv), "mesh-helicoid");
  return 0;
}

int run_mesh_cmc(const Job& job) {
  if (job.nu % 2 != 0) throw UsageError("mesh-cmc: --nu must be even (two mirrored halves)");
  const auto [lo, hi] = parse_v_range(job.v_range, {-1.5 / job.alpha, 1.5 / job.alpha});
  const auto m = build_cmc_annulus(job.alpha, job.tol);
  write_mesh_job(job, reflect_and_mesh(m, {lo, hi, job.nu, job.nv, true}), "mesh-cmc");
  if (!job.curves_out.empty()) {
    std::ostringstream os;
    os << "side,v,disk_re,disk_im,halfplane_x,halfplane_y\n";
    for (int sign : {-1, 1}) {
      const auto c = halfplane_curve(m, sign, lo, hi, std::max(job.nv, 16));
      for (std::size_t i = 0; i < c.v.size(); ++i)
        os << sign << ',' << csv::num(c.v[i]) << ',' << csv::num(c.disk[i].real()) << ','
           << csv::num(c.disk[i].imag()) << ',' << csv::num(c.point[i][0]) << ','
           << csv::num(c.point[i][1]) << '\n';
    }
    write_file_atomic(job.curves_out, os.str());
  }
  return 0;
}

int run_section(const Job& job) {
  const auto f = format_or(job, "csv");
  require_format(f, {"csv"}, "section");
  const auto m = build_catenoid(job.alpha, job.tol);
  std::ostringstream os;
  os << "c,u,y1,y3\n";
  json summary = json::array();
  bool ok = true;
  for (double c : job.section_c) {
    const auto sc = section_curve(m, c, job.nu);
    for (std::size_t i = 0; i < sc.u.size(); ++i)
      os << csv::num(c) << ',' << csv::num(sc.u[i]) << ',' << csv::num(sc.y[i][0]) << ','
         << csv::num(sc.y[i][1]) << '\n';
    json s;
    s["c"] = c;
    s["closure_gap"] = sc.closure_gap;
    s["min_curvature"] = sc.min_curvature;
    s["turning_number"] = sc.turning_number;
    s["slope_residual"] = sc.slope_residual;
    summary.push_back(s);
    ok &= sc.closure_gap <= 1e-8 && sc.min_curvature > 0 &&
          std::abs(sc.turning_number - 1) <= 1e-6 && sc.slope_residual <= 1e-6;
  }
  emit(job, os.str());
  if (!job.out.empty()) std::cout << summary.dump(2) << "\n";
  if (!ok) std::cerr << "section: a section check failed\n";
  return ok ? 0 : 1;
}

int run_limit_study(const Job& job) {
  const auto alphas = job.alpha_sweep.empty() && job.alpha == 1.0
                          ? std::vector<double>{1, 10, 20, 50, 100}
                          : alphas_of(job);
  const auto f = format_or(job, "csv");
  require_format(f, {"csv", "json"}, "limit-study");
  std::ostringstream os;
  json arr = json::array();
  os << "alpha,theta_tilde,limit_deviation,waist_extent\n";
  for (double a : alphas) {
    const auto m = build_catenoid(a, job.tol);
    double dev = 0;
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < 5; ++k)
        for (double d : limit_deviation(m, -1 + 0.5 * i, -1 + 0.5 * k)) dev = std::max(dev, std::abs(d));
    const double w = waist_extent(m);
    os << csv::num(a) << ',' << csv::num(m.theta()) << ',' << csv::num(dev) << ',' << csv::num(w)
       << '\n';
    json j;
    j["alpha"] = a;
    j["theta_tilde"] = m.theta();
    j["limit_deviation"] = dev;
    j["waist_extent"] = w;
    arr.push_back(j);
  }
  emit(job, f == "csv" ? os.str() : arr.dump(2) + "\n");
  return 0;
}

int run_verify_job(const Job& job) {
  const auto f = format_or(job, "json");
  require_format(f, {"json"}, "verify");
  VerifyOptions opt{job.alpha, job.tol, !job.no_limits};
  const auto rep = run_verify(opt);
  emit(job, verify_json(opt, rep));
  if (rep.all_pass()) return 0;
  for (const auto& [k, e] : rep.entries())
    if (!e.pass())
      std::cerr << "verify: check '" << k << "' failed: " << e.max_abs << " > " << e.threshold
                << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horizontal catenoids and helicoids in Nil3 and their CMC 1/2 sister annuli in H2xR"};
  app.require_subcommand(1);
  Job job;

  auto add_alpha = [&](CLI::App* c) {
    c->add_option("--alpha", job.alpha, "surface parameter alpha > 0")
        ->check(CLI::PositiveNumber);
  };
  auto add_tol = [&](CLI::App* c) {
    c->add_option("--tol", job.tol, "solver tolerance in [1e-14, 1e-6]")
        ->check(CLI::Range(1e-14, 1e-6));
  };
  auto add_out = [&](CLI::App* c, const char* formats) {
    c->add_option("--out", job.out, "output file (written atomically); stdout when omitted");
    c->add_option("--format", job.format, formats);
  };
  auto add_mesh = [&](CLI::App* c) {
    c->add_option("--nu", job.nu, "samples along u (>= 16)")->check(CLI::Range(16, 1 << 20));
    c->add_option("--nv", job.nv, "samples along v (>= 2)")->check(CLI::Range(2, 1 << 20));
    c->add_option("--v-range", job.v_range, "v interval lo:hi");
  };

  auto* solve = app.add_subcommand("solve-period", "solve L(alpha, theta) = 0 for theta_tilde");
  add_alpha(solve);
  solve->add_option("--alpha-sweep", job.alpha_sweep, "a:b:n evenly spaced alphas");
  add_tol(solve);
  add_out(solve, "json or csv");

  auto* mcat = app.add_subcommand("mesh-catenoid", "mesh one period of the horizontal catenoid");
  auto* mhel = app.add_subcommand("mesh-helicoid", "mesh the helicoid over u in [-U, U]");
  auto* mcmc = app.add_subcommand("mesh-cmc", "mesh the reflected CMC 1/2 annulus");
  for (auto* c : {mcat, mhel, mcmc}) {
    add_alpha(c);
    add_tol(c);
    add_mesh(c);
    add_out(c, "obj or ply (default from the --out extension)");
  }
  mcmc->add_option("--curves-out", job.curves_out, "CSV of the two height-zero curves");

  auto* sec = app.add_subcommand("section", "vertical sections y2 = c of the catenoid");
  add_alpha(sec);
  add_tol(sec);
  sec->add_option("--section-c", job.section_c, "section heights (repeatable)");
  sec->add_option("--nu", job.nu, "samples per section (>= 16)")->check(CLI::Range(16, 1 << 20));
  add_out(sec, "csv");

  auto* lim = app.add_subcommand("limit-study", "large-alpha limit deviations and waist extent");
  add_alpha(lim);
  lim->add_option("--alpha-sweep", job.alpha_sweep, "a:b:n evenly spaced alphas");
  add_tol(lim);
  add_out(lim, "csv or json");

  auto* ver = app.add_subcommand("verify", "run the full residual suite; exit 1 on any failure");
  add_alpha(ver);
  add_tol(ver);
  ver->add_flag("--no-limits", job.no_limits, "skip the large-alpha catenoid checks");
  add_out(ver, "json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return run_solve_period(job);
    if (*mcat) return run_mesh_catenoid(job);
    if (*mhel) return run_mesh_helicoid(job);
    if (*mcmc) return run_mesh_cmc(job);
    if (*sec) return run_section(job);
    if (*lim) return run_limit_study(job);
    if (*ver) return run_verify_job(job);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ResolutionError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
