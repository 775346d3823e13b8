// Experiment harness: profile/ensemble/spectrum inspection, reconstruction
// sweeps, Burgers reference curves, branch classification and sampling
// tables, exponent fits, Whitham comparison, microlocal diagnostics,
// Bohr-Sommerfeld crossing statistics, and the acceptance gate.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "bolab/acceptance.hpp"
#include "bolab/branch.hpp"
#include "bolab/burgers.hpp"
#include "bolab/ensemble.hpp"
#include "bolab/hash.hpp"
#include "bolab/microlocal.hpp"
#include "bolab/profile.hpp"
#include "bolab/reconstruct.hpp"
#include "bolab/runio.hpp"
#include "bolab/spectral.hpp"

using namespace bolab;
using json = nlohmann::json;

namespace {

struct Session {
  RunConfig cfg;
  std::unique_ptr<Profile> profile;
  std::unique_ptr<LambdaMap> map;
  std::unique_ptr<BurgersSolver> burgers;
  std::unique_ptr<Manifest> manifest;
  std::chrono::steady_clock::time_point t0;

  void init() {
    profile = std::make_unique<Profile>(make_profile(cfg.profile_name, cfg.profile_params));
    map = std::make_unique<LambdaMap>(*profile);
    burgers = std::make_unique<BurgersSolver>(*profile);
    manifest = std::make_unique<Manifest>(cfg.hash());
    t0 = std::chrono::steady_clock::now();
  }

  std::string path(const std::string& name) const {
    return (std::filesystem::path(cfg.out_dir) / name).string();
  }

  void emit(const std::string& name, const std::vector<std::string>& header,
            const std::vector<std::vector<double>>& cols) {
    const std::string p = path(name);
    write_csv(p, header, cols);
    manifest->add_file(p);
  }

  void emit_text(const std::string& name, const std::string& text) {
    const std::string p = path(name);
    std::filesystem::create_directories(std::filesystem::path(p).parent_path());
    std::ofstream out(p);
    out << text;
    out.close();
    manifest->add_file(p);
  }

  void finish(const std::string& stage) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest->add_stage(stage, secs);
    manifest->write(path("manifest.json"));
    std::printf("%s done in %.2fs; outputs in %s\n", stage.c_str(), secs,
                cfg.out_dir.c_str());
  }

  Ensemble ens(double eps) const { return quantize(*profile, *map, eps, cfg.snap); }

  ComplexSpectrum sigma_spectrum(double eps, double t) const {
    if (cfg.cache_spectra) {
      // binary cache keyed by (profile, eps, t); holds eigenvalues and vectors
      std::ostringstream key;
      key << cfg.profile_name;
      for (const auto& [k, v] : cfg.profile_params) key << "," << k << "=" << format_g17(v);
      key << ";" << format_g17(eps) << ";" << format_g17(t);
      const std::string file =
          (std::filesystem::path(cfg.out_dir) / "cache" / (hex64(fnv1a64(key.str())) + ".bin"))
              .string();
      if (std::filesystem::exists(file)) {
        std::ifstream in(file, std::ios::binary);
        int n = 0;
        in.read(reinterpret_cast<char*>(&n), sizeof(n));
        ComplexSpectrum cs;
        cs.sigma.resize(n);
        cs.vectors.resize(n, n);
        in.read(reinterpret_cast<char*>(cs.sigma.data()), n * sizeof(std::complex<double>));
        in.read(reinterpret_cast<char*>(cs.vectors.data()),
                size_t(n) * n * sizeof(std::complex<double>));
        if (in) return cs;
      }
      const ComplexSpectrum cs = eig_general(build_C(ens(eps), t));
      std::filesystem::create_directories(std::filesystem::path(file).parent_path());
      std::ofstream out(file, std::ios::binary);
      const int n = static_cast<int>(cs.sigma.size());
      out.write(reinterpret_cast<const char*>(&n), sizeof(n));
      out.write(reinterpret_cast<const char*>(cs.sigma.data()),
                n * sizeof(std::complex<double>));
      out.write(reinterpret_cast<const char*>(cs.vectors.data()),
                size_t(n) * n * sizeof(std::complex<double>));
      return cs;
    }
    return eig_general(build_C(ens(eps), t));
  }

  BranchSets classify_at(const ComplexSpectrum& cs, double eps, double t) const {
    double Xm = 0.0, Xp = 0.0;
    if (t > burgers->breaking_time()) std::tie(Xm, Xp) = burgers->caustics(t);
    ClassifyConfig cc;
    cc.c_out = cfg.c_out;
    cc.c_split = cfg.c_split;
    cc.B_bound = cfg.B_bound;
    return classify(cs, eps, t, burgers->breaking_time(), Xm, Xp, cc);
  }
};

// Bounded worker pool over an index range; results land in caller storage.
void parallel_for(int n, int workers, const std::function<void(int)>& body) {
  if (workers <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int k = std::min(workers, n);
  for (int w = 0; w < k; ++w)
    pool.emplace_back([&]() {
      for (int i = next++; i < n; i = next++) body(i);
    });
  for (auto& th : pool) th.join();
}

std::string plot_script(const std::string& csv, const std::string& xcol,
                        const std::string& ycol, const std::string& title) {
  std::ostringstream s;
  s << "#!/usr/bin/env python3\n"
    << "import csv, sys\n"
    << "import matplotlib.pyplot as plt\n"
    << "xs, ys = [], []\n"
    << "with open('" << csv << "') as f:\n"
    << "    r = csv.DictReader(f)\n"
    << "    for row in r:\n"
    << "        xs.append(float(row['" << xcol << "']))\n"
    << "        ys.append(float(row['" << ycol << "']))\n"
    << "plt.plot(xs, ys, lw=0.8)\n"
    << "plt.xlabel('" << xcol << "'); plt.ylabel('" << ycol << "')\n"
    << "plt.title('" << title << "')\n"
    << "plt.savefig('" << csv << ".png', dpi=150)\n";
  return s.str();
}

int cmd_profile(Session& s) {
  const auto xs = s.cfg.x_grid();
  std::vector<double> u0(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) u0[i] = s.profile->eval_u0(xs[i]);
  s.emit("profile_curve.csv", {"x", "u0"}, {xs, u0});
  std::vector<double> yg, lg;
  for (int i = 1; i < 512; ++i) {
    const double y = s.profile->M() * i / 512.0;
    yg.push_back(y);
    lg.push_back(s.map->lambda_of_y(y));
  }
  s.emit("lambda_map.csv", {"y", "lambda"}, {yg, lg});
  json rep;
  rep["L"] = s.profile->L();
  rep["M"] = s.profile->M();
  rep["breaking_time"] = s.burgers->breaking_time();
  s.emit_text("profile_report.json", rep.dump(2) + "\n");
  if (s.cfg.emit_plot_scripts)
    s.emit_text("plot_profile.py", plot_script("profile_curve.csv", "x", "u0", "initial condition"));
  s.finish("profile");
  return 0;
}

int cmd_ensemble(Session& s) {
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    std::ostringstream name;
    name << "ensemble_N" << e.N << ".json";
    s.emit_text(name.str(), e.to_json() + "\n");
  }
  s.finish("ensemble");
  return 0;
}

int cmd_spectrum(Session& s) {
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    for (double t : s.cfg.times) {
      const ComplexSpectrum cs = s.sigma_spectrum(e.eps, t);
      std::vector<double> mu(e.N), nu(e.N), epsc(e.N, e.eps), tc(e.N, t);
      for (int k = 0; k < e.N; ++k) {
        mu[k] = cs.sigma(k).real();
        nu[k] = cs.sigma(k).imag();
      }
      std::ostringstream name;
      name << "sigma_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(), {"mu", "nu", "epsilon", "t"}, {mu, nu, epsc, tc});

      const HermitianSpectrum hs = eig_hermitian(build_A(e, s.cfg.x0, t));
      const Velocities vel = alpha_velocities(hs, e);
      std::vector<double> al(e.N), ax(e.N), at(e.N);
      for (int k = 0; k < e.N; ++k) {
        al[k] = hs.alpha(k);
        ax[k] = vel.x(k);
        at[k] = vel.t(k);
      }
      std::ostringstream name2;
      name2 << "alpha_N" << e.N << "_t" << t << ".csv";
      s.emit(name2.str(), {"alpha", "alpha_x", "alpha_t", "epsilon", "t"},
             {al, ax, at, epsc, tc});
    }
  }
  s.finish("spectrum");
  return 0;
}

int cmd_reconstruct(Session& s, const std::string& route) {
  const auto xs = s.cfg.x_grid();
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    for (double t : s.cfg.times) {
      std::vector<double> u(xs.size()), uU(xs.size(), 0.0), uL(xs.size(), 0.0),
          uo(xs.size(), 0.0), rc(xs.size()), ec(xs.size(), e.eps), tc(xs.size(), t);
      if (route == "alpha") {
        MatC A = build_A(e, 0.0, t);
        for (size_t i = 0; i < xs.size(); ++i) {
          update_A_diagonal(e, xs[i], t, A);
          const HermitianSpectrum hs = eig_hermitian(A);
          const Velocities vel = alpha_velocities(hs, e);
          u[i] = u_from_alphas(hs, vel, e.eps);
          rc[i] = 0.0;
        }
      } else {
        const ComplexSpectrum cs = s.sigma_spectrum(e.eps, t);
        const bool split = t > s.burgers->breaking_time();
        BranchSets sets;
        if (split) sets = s.classify_at(cs, e.eps, t);
        for (size_t i = 0; i < xs.size(); ++i) {
          u[i] = u_from_sigmas(cs, e.eps, xs[i]);
          rc[i] = 1.0;
          if (split) {
            const Decomposition d = diagnostic_decompose(cs, sets, e.eps, xs[i]);
            uU[i] = d.u_U;
            uL[i] = d.u_L;
            uo[i] = d.u_o;
          }
        }
      }
      std::ostringstream name;
      name << "u_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(), {"x", "u", "u_U", "u_L", "u_o", "route", "epsilon", "t"},
             {xs, u, uU, uL, uo, rc, ec, tc});
      if (s.cfg.emit_plot_scripts)
        s.emit_text("plot_" + name.str() + ".py",
                    plot_script(name.str(), "x", "u", "reconstructed profile"));
    }
  }
  s.finish("reconstruct");
  return 0;
}

int cmd_burgers(Session& s) {
  const auto xs = s.cfg.x_grid();
  json rep;
  rep["breaking_time"] = s.burgers->breaking_time();
  for (double t : s.cfg.times) {
    std::vector<double> xc(xs.size()), tc(xs.size(), t), nb(xs.size()), b0(xs.size()),
        b1(xs.size()), b2(xs.size()), wb(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
      const BurgersBranches b = s.burgers->branches(xs[i], t);
      xc[i] = xs[i];
      nb[i] = double(b.values.size());
      b0[i] = b.u0B();
      b1[i] = b.triple ? b.u1B() : 0.0;
      b2[i] = b.triple ? b.u2B() : b.u0B();
      wb[i] = s.burgers->weak_limit(xs[i], t);
    }
    std::ostringstream name;
    name << "burgers_t" << t << ".csv";
    s.emit(name.str(), {"x", "t", "n_branches", "u0B", "u1B", "u2B", "ubar"},
           {xc, tc, nb, b0, b1, b2, wb});
    if (t > s.burgers->breaking_time()) {
      const auto [xm, xp] = s.burgers->caustics(t);
      rep["caustics"][std::to_string(t)] = {xm, xp};
    }
  }
  s.emit_text("burgers_report.json", rep.dump(2) + "\n");
  s.finish("burgers");
  return 0;
}

int cmd_branches(Session& s) {
  json rep;
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    for (double t : s.cfg.times) {
      const ComplexSpectrum cs = s.sigma_spectrum(e.eps, t);
      const BranchSets sets = s.classify_at(cs, e.eps, t);
      auto table_csv = [&](const SamplingTable& tab, const std::string& tag) {
        std::vector<double> ec(tab.y.size(), e.eps), tc(tab.y.size(), t);
        std::ostringstream name;
        name << "table_" << tag << "_N" << e.N << "_t" << t << ".csv";
        s.emit(name.str(), {"y", "mu", "nu_rescaled", "mu_prime", "nu_prime", "epsilon", "t"},
               {tab.y, tab.mu, tab.nu, tab.mu_prime, tab.nu_prime, ec, tc});
      };
      table_csv(sampling_table(sets, BranchTag::UPPER, cs, e.eps, t), "upper");
      if (!sets.lower.empty())
        table_csv(sampling_table(sets, BranchTag::LOWER, cs, e.eps, t), "lower");
      std::vector<double> om(sets.outliers.size()), on(sets.outliers.size());
      for (size_t i = 0; i < sets.outliers.size(); ++i) {
        om[i] = cs.sigma(sets.outliers[i]).real();
        on[i] = cs.sigma(sets.outliers[i]).imag();
      }
      std::ostringstream name;
      name << "outliers_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(), {"mu", "nu"}, {om, on});
      json entry;
      entry["epsilon"] = e.eps;
      entry["t"] = t;
      entry["N"] = e.N;
      entry["N_outliers"] = sets.outliers.size();
      entry["N_upper"] = sets.upper.size();
      entry["N_lower"] = sets.lower.size();
      entry["outlier_fraction_eps_scaled"] = double(sets.outliers.size()) * e.eps;
      rep["runs"].push_back(entry);
    }
  }
  s.emit_text("branches_report.json", rep.dump(2) + "\n");
  s.finish("branches");
  return 0;
}

int cmd_exponents(Session& s) {
  json rep;
  for (double t : s.cfg.times) {
    const int n = static_cast<int>(s.cfg.epsilons.size());
    std::vector<EdgeSample> sweep(n);
    std::vector<std::string> errors(n);
    parallel_for(n, s.cfg.workers, [&](int i) {
      try {
        const double eps = s.cfg.epsilons[i];
        const Ensemble e = s.ens(eps);
        const ComplexSpectrum cs = s.sigma_spectrum(e.eps, t);
        const BranchSets sets = s.classify_at(cs, e.eps, t);
        sweep[i] = edge_sample(sampling_table(sets, BranchTag::UPPER, cs, e.eps, t));
      } catch (const std::exception& ex) {
        errors[i] = ex.what();
      }
    });
    for (const std::string& err : errors)
      if (!err.empty()) throw std::runtime_error("exponent sweep: " + err);
    std::sort(sweep.begin(), sweep.end(),
              [](const EdgeSample& a, const EdgeSample& b) { return a.eps > b.eps; });
    const ExponentFit f = fit_exponents(sweep);
    json entry;
    entry["t"] = t;
    entry["epsilons"] = s.cfg.epsilons;
    entry["q_minus"] = f.q_minus;
    entry["q_plus"] = f.q_plus;
    entry["r_minus"] = f.r_minus;
    entry["r_plus"] = f.r_plus;
    entry["r2"] = {f.r2_q_minus, f.r2_q_plus, f.r2_r_minus, f.r2_r_plus};
    entry["poor_fit"] = f.poor_fit;
    rep["fits"].push_back(entry);
  }
  s.emit_text("exponents_report.json", rep.dump(2) + "\n");
  s.finish("exponents");
  return 0;
}

int cmd_whitham(Session& s) {
  json rep;
  for (double t : s.cfg.times) {
    if (t <= s.burgers->breaking_time())
      throw std::invalid_argument("whitham: need t > breaking time");
    const auto [Xm, Xp] = s.burgers->caustics(t);
    for (double eps : s.cfg.epsilons) {
      const Ensemble e = s.ens(eps);
      const ComplexSpectrum cs = s.sigma_spectrum(e.eps, t);
      const BranchSets sets = s.classify_at(cs, e.eps, t);
      const SamplingTable up = sampling_table(sets, BranchTag::UPPER, cs, e.eps, t);
      const SamplingTable lo = sampling_table(sets, BranchTag::LOWER, cs, e.eps, t);
      std::vector<double> xc, pU, pL, fL, bU, bL, bPhi;
      const int nx = 101;
      for (int i = 1; i < nx; ++i) {
        const double x = Xm + (Xp - Xm) * double(i) / nx;
        if (x <= lo.mu.front() || x >= lo.mu.back()) continue;
        const WhithamFields f = modulation_fields(up, lo, x, t);
        const BurgersBranches b = s.burgers->branches(x, t);
        if (!b.triple || b.degenerate) continue;
        xc.push_back(x);
        pU.push_back(f.psi_U);
        pL.push_back(f.psi_L);
        fL.push_back(f.phi_L);
        bU.push_back(b.u0B());
        bL.push_back(b.u2B() - b.u1B());
        bPhi.push_back(0.5 * std::log((b.u2B() - b.u0B()) / (b.u1B() - b.u0B())));
      }
      std::ostringstream name;
      name << "whitham_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(),
             {"x", "psi_U", "psi_L", "phi_L", "u0B", "psiL_burgers", "phiL_burgers"},
             {xc, pU, pL, fL, bU, bL, bPhi});
      const WhithamFields f0 = modulation_fields(up, lo, s.cfg.x0, t);
      const BurgersBranches b0 = s.burgers->branches(s.cfg.x0, t);
      json entry;
      entry["epsilon"] = e.eps;
      entry["t"] = t;
      entry["x0"] = s.cfg.x0;
      entry["psi_U"] = f0.psi_U;
      entry["psi_L"] = f0.psi_L;
      entry["phi_L"] = f0.phi_L;
      entry["residual_psi_U"] = std::abs(f0.psi_U - b0.u0B());
      entry["residual_psi_L"] = std::abs(f0.psi_L - (b0.u2B() - b0.u1B()));
      entry["residual_phi_L"] =
          std::abs(f0.phi_L - 0.5 * std::log((b0.u2B() - b0.u0B()) / (b0.u1B() - b0.u0B())));
      rep["runs"].push_back(entry);
    }
  }
  s.emit_text("whitham_report.json", rep.dump(2) + "\n");
  s.finish("whitham");
  return 0;
}

int cmd_microlocal(Session& s) {
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    for (double t : s.cfg.times) {
      const HermitianSpectrum hs = eig_hermitian(build_A(e, s.cfg.x0, t));
      const Velocities vel = alpha_velocities(hs, e);
      const SmallEigenSet small =
          small_eigs(hs, vel, *s.burgers, s.cfg.x0, t, e.eps, s.cfg.r_exp,
                     s.profile->decay_p());
      std::vector<double> al, ax, cl;
      for (const SmallEig& se : small.entries) {
        al.push_back(se.alpha);
        ax.push_back(se.alpha_x);
        cl.push_back(se.cls == EigClass::SLOW ? 0.0
                                              : (se.cls == EigClass::FAST ? 1.0 : 2.0));
      }
      std::ostringstream name;
      name << "small_eigs_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(), {"alpha", "alpha_x", "class"}, {al, ax, cl});

      const auto orbits = orbit(*s.profile, *s.burgers, s.cfg.x0, t);
      std::vector<double> ol, oth, oid;
      for (size_t c = 0; c < orbits.size(); ++c)
        for (size_t i = 0; i < orbits[c].lambda.size(); ++i) {
          ol.push_back(orbits[c].lambda[i]);
          oth.push_back(orbits[c].theta[i]);
          oid.push_back(double(c));
        }
      std::ostringstream name2;
      name2 << "orbit_t" << t << ".csv";
      s.emit(name2.str(), {"lambda", "theta", "component"}, {ol, oth, oid});

      std::vector<double> ga, gv;
      const double a0 = std::pow(e.eps, 1.0 / 3.0);
      for (int i = 1; i < 200; ++i) {
        const double a = -a0 + 2.0 * a0 * i / 200.0;
        if (std::abs(a) < 1e-6) continue;
        ga.push_back(a);
        gv.push_back(density_G(*s.profile, a, s.cfg.x0, t));
      }
      std::ostringstream name3;
      name3 << "density_G_t" << t << ".csv";
      s.emit(name3.str(), {"alpha", "G"}, {ga, gv});
    }
  }
  s.finish("microlocal");
  return 0;
}

int cmd_bohr(Session& s) {
  json rep;
  for (double eps : s.cfg.epsilons) {
    const Ensemble e = s.ens(eps);
    for (double t : s.cfg.times) {
      if (t <= s.burgers->breaking_time())
        throw std::invalid_argument("bohr: need t > breaking time");
      const auto [Xm, Xp] = s.burgers->caustics(t);
      const BSPrediction bs =
          bohr_sommerfeld(*s.profile, *s.map, *s.burgers, s.cfg.x0, t, e.eps);
      const std::vector<Crossing> cr = zero_crossings(
          e, *s.burgers, t, Xm + 0.3, Xp - 0.3, s.profile->decay_p());
      std::vector<double> cx, cc, cv;
      for (const Crossing& c : cr) {
        cx.push_back(c.x);
        cv.push_back(c.alpha_x);
        cc.push_back(c.cls == EigClass::SLOW ? 0.0 : 1.0);
      }
      std::ostringstream name;
      name << "crossings_N" << e.N << "_t" << t << ".csv";
      s.emit(name.str(), {"x", "label", "alpha_x"}, {cx, cc, cv});
      auto spacing_median = [&cr](EigClass cls) {
        std::vector<double> sp;
        const Crossing* prev = nullptr;
        for (const Crossing& c : cr) {
          if (c.cls != cls) continue;
          if (prev) sp.push_back(c.x - prev->x);
          prev = &c;
        }
        std::sort(sp.begin(), sp.end());
        return sp.empty() ? 0.0 : sp[sp.size() / 2];
      };
      json entry;
      entry["epsilon"] = e.eps;
      entry["t"] = t;
      entry["x0"] = s.cfg.x0;
      entry["g0_plus"] = bs.g0_plus;
      entry["g0_minus"] = bs.g0_minus;
      entry["f_plus"] = bs.f_plus;
      entry["f_minus"] = bs.f_minus;
      entry["predicted_spacing_fast"] = bs.spacing_fast;
      entry["predicted_spacing_slow"] = bs.spacing_slow;
      entry["observed_median_fast"] = spacing_median(EigClass::FAST);
      entry["observed_median_slow"] = spacing_median(EigClass::SLOW);
      entry["crossings"] = cr.size();
      rep["runs"].push_back(entry);
    }
  }
  s.emit_text("bohr_report.json", rep.dump(2) + "\n");
  s.finish("bohr");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Benjamin-Ono soliton-ensemble laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  Session s;
  app.add_option("--config", config_path, "JSON run configuration");
  // flag overrides, applied after the config file loads
  std::vector<double> eps_override, t_override;
  std::string out_override;
  int workers_override = -1;
  bool plots = false, cache = false;
  double x0_override = std::numeric_limits<double>::quiet_NaN();
  app.add_option("--epsilon", eps_override, "epsilon values");
  app.add_option("--t", t_override, "time values");
  app.add_option("--out-dir", out_override, "output directory");
  app.add_option("--x0", x0_override, "reference position x0");
  app.add_option("--workers", workers_override, "sweep worker threads");
  app.add_flag("--plots", plots, "emit standalone plot scripts");
  app.add_flag("--cache", cache, "cache sigma spectra on disk");

  auto* c_profile = app.add_subcommand("profile", "profile curve, Lambda map, L/M report");
  auto* c_ensemble = app.add_subcommand("ensemble", "quantized data as JSON");
  auto* c_spectrum = app.add_subcommand("spectrum", "sigma and alpha spectra CSVs");
  auto* c_reconstruct = app.add_subcommand("reconstruct", "u(x,t) profile sweep");
  std::string route = "sigma";
  c_reconstruct->add_option("--route", route, "sigma|alpha")
      ->check(CLI::IsMember({"sigma", "alpha"}));
  auto* c_burgers = app.add_subcommand("burgers", "multivalued Burgers reference");
  auto* c_branches = app.add_subcommand("branches", "classification + sampling tables");
  auto* c_exponents = app.add_subcommand("exponents", "edge exponent fits over the eps sweep");
  auto* c_whitham = app.add_subcommand("whitham", "modulation fields vs Burgers branches");
  auto* c_micro = app.add_subcommand("microlocal", "small-eig scatter, orbits, density G");
  auto* c_bohr = app.add_subcommand("bohr", "zero crossings vs Bohr-Sommerfeld spacings");
  auto* c_verify = app.add_subcommand("verify", "run the acceptance criteria");
  int only_criterion = 0;
  c_verify->add_option("--criterion", only_criterion, "run a single criterion (1-13)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw std::runtime_error("cannot open config " + config_path);
      std::ostringstream ss;
      ss << in.rdbuf();
      s.cfg = RunConfig::from_json_text(ss.str());
    }
    if (!eps_override.empty()) s.cfg.epsilons = eps_override;
    if (!t_override.empty()) s.cfg.times = t_override;
    if (!out_override.empty()) s.cfg.out_dir = out_override;
    if (workers_override > 0) s.cfg.workers = workers_override;
    if (plots) s.cfg.emit_plot_scripts = true;
    if (cache) s.cfg.cache_spectra = true;
    if (!std::isnan(x0_override)) s.cfg.x0 = x0_override;

    if (c_verify->parsed()) return acceptance_report(only_criterion) == 0 ? 0 : 1;

    s.init();
    if (c_profile->parsed()) return cmd_profile(s);
    if (c_ensemble->parsed()) return cmd_ensemble(s);
    if (c_spectrum->parsed()) return cmd_spectrum(s);
    if (c_reconstruct->parsed()) return cmd_reconstruct(s, route);
    if (c_burgers->parsed()) return cmd_burgers(s);
    if (c_branches->parsed()) return cmd_branches(s);
    if (c_exponents->parsed()) return cmd_exponents(s);
    if (c_whitham->parsed()) return cmd_whitham(s);
    if (c_micro->parsed()) return cmd_microlocal(s);
    if (c_bohr->parsed()) return cmd_bohr(s);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
