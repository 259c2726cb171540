#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "tenkit/classify.hpp"
#include "tenkit/generate.hpp"
#include "tenkit/io.hpp"
#include "tenkit/tcp.hpp"
#include "tenkit/tensor.hpp"
#include "tenkit/transform.hpp"

namespace {

using namespace tenkit;

std::string tristate_str(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
  }
  return "unknown";
}

std::string witness_str(const std::optional<ClassWitness>& w) {
  if (!w) return "none";
  std::string out = w->index.size() == 1 ? "row" : "entry";
  for (const int c : w->index) out += " " + std::to_string(c + 1);
  return out;
}

std::string bools_str(const std::vector<bool>& bs) {
  std::string out;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (i) out += ',';
    out += bs[i] ? "true" : "false";
  }
  return out;
}

Vector vector_arg(const std::string& arg, const std::string& what) {
  if (std::filesystem::exists(arg)) return read_vector_file(arg);
  return parse_vector_text(arg, what);
}

struct ClassifyCmd {
  std::string input;
  bool hm = false;
  double tol = 1e-10;
  int max_iter = 100000;

  int run() const {
    const Tensor t = parse_tensor_file(input);
    const ClassReport r = classify(t);
    Report rep;
    rep.add("is_z", r.is_z);
    rep.add("is_dd", r.is_dd);
    rep.add("is_sdd", r.is_sdd);
    rep.add("is_nekrasov", r.is_nekrasov);
    rep.add("is_nekrasov_z", r.is_nekrasov_z);
    rep.add("positive_diagonal", r.positive_diagonal);
    rep.add("even_order", r.even_order);
    rep.add("predicted_p", r.predicted_p);
    rep.add("zero_diagonal", r.zero_diagonal);
    rep.add("witness", witness_str(r.witness));
    rep.add("row_excess", r.profile.row_excess);
    if (r.zero_diagonal) {
      rep.add("lambda", "unavailable");
      rep.add("per_row_strict", "unavailable");
    } else {
      rep.add("lambda", r.profile.lambda);
      rep.add("per_row_strict", bools_str(r.profile.per_row_strict));
    }
    rep.add("diag", r.profile.diag);
    if (hm) {
      const MTensorVerdict mt = is_nonsingular_m(t, tol, max_iter);
      const MTensorVerdict ht = is_nonsingular_h(t, tol, max_iter);
      rep.add("m_tensor", tristate_str(mt.verdict));
      rep.add("h_tensor", tristate_str(ht.verdict));
      rep.add("h_shift", ht.shift);
      if (!ht.z_failed) {
        rep.add("h_rho", ht.rho.value);
        rep.add("h_rho_lower", ht.rho.lower);
        rep.add("h_rho_upper", ht.rho.upper);
      }
    }
    rep.print(std::cout);
    return 0;
  }
};

struct ScaleCmd {
  std::string input;
  std::string output;
  bool strict = false;
  double tol = 1e-10;
  int max_iter = 100000;

  int run() const {
    const Tensor t = parse_tensor_file(input);
    Vector w;
    if (strict) {
      const auto sw = strict_scaling(t, tol, max_iter);
      if (!sw) {
        throw std::invalid_argument(
            "no strict scaling certificate: the comparison tensor did not verify as a "
            "nonsingular M tensor with a positive stationary vector");
      }
      w = *sw;
    } else {
      w = nekrasov_scaling(t);
    }
    const Tensor scaled = scale_columns(t, w);
    write_tensor_file(output, scaled, {"scaled from " + input + (strict ? " (strict)" : "")});
    write_scaling(std::cout, w);
    Report rep;
    rep.add("dd_nonstrict", is_diag_dominant(scaled, false));
    rep.add("dd_strict", is_diag_dominant(scaled, true));
    rep.add("is_z", is_z(scaled));
    rep.add("written", output);
    rep.print(std::cout);
    return 0;
  }
};

struct DecomposeCmd {
  std::string input;
  std::string output;

  int run() const {
    const Tensor t = parse_tensor_file(input);
    const Decomposition d = decompose_plus(t);
    {
      std::ofstream out(output);
      if (!out) throw ParseError(output + ": cannot open for writing");
      write_tensor(out, d.b_plus, {"b_plus of " + input});
      write_tensor(out, d.c, {"c of " + input});
      if (!out.flush()) throw ParseError(output + ": write failed");
    }
    Report rep;
    rep.add("r_plus", d.r_plus);
    rep.add("verified", verify_decomposition(d, t));
    rep.add("b_plus_is_z", is_z(d.b_plus));
    rep.add("written", output);
    rep.print(std::cout);
    return 0;
  }
};

struct SolveCmd {
  std::string input;
  std::string q_arg;
  std::string x0_arg;
  std::string method = "newton";
  double tol = 1e-8;
  double step = 1.0;
  int max_iter = -1;

  int run() const {
    const Tensor t = parse_tensor_file(input);
    TcpInstance inst{t, vector_arg(q_arg, "--q")};
    std::optional<Vector> x0;
    if (!x0_arg.empty()) x0 = vector_arg(x0_arg, "--x0");

    TcpSolution sol;
    if (method == "newton") {
      sol = solve_newton(inst, tol, max_iter > 0 ? max_iter : 200, x0);
    } else if (method == "fixed") {
      sol = solve_fixed_point(inst, step, tol, max_iter > 0 ? max_iter : 10000, x0);
    } else {
      throw std::invalid_argument("unknown method '" + method + "' (expected newton or fixed)");
    }
    Report rep;
    rep.add("x", sol.x);
    rep.add("w", sol.w);
    rep.add("residual", sol.residual);
    rep.add("complementarity_gap", sol.complementarity_gap);
    rep.add("iterations", sol.iterations);
    rep.add("status", to_string(sol.status));
    rep.add("method", method);
    rep.print(std::cout);
    return sol.status == TcpStatus::solved ? 0 : 1;
  }
};

struct SpectralCmd {
  std::string input;
  double tol = 1e-10;
  int max_iter = 100000;

  int run() const {
    const Tensor t = parse_tensor_file(input);
    const SpectralEstimate est = spectral_radius_nonneg(t, tol, max_iter);
    Report rep;
    rep.add("value", est.value);
    rep.add("lower", est.lower);
    rep.add("upper", est.upper);
    rep.add("iterations", est.iterations);
    rep.add("converged", est.converged);
    rep.add("eigenvector", est.eigenvector);
    rep.print(std::cout);
    return est.converged ? 0 : 1;
  }
};

struct GenerateCmd {
  int order = 2;
  int dim = 1;
  std::string cls = "arbitrary";
  std::uint64_t seed = 0;
  double density = 1.0;
  std::string output;

  int run() const {
    GeneratorSpec spec;
    spec.order = order;
    spec.dim = dim;
    spec.target = parse_tensor_class(cls);
    spec.seed = seed;
    spec.density = density;
    const Tensor t = generate(spec);
    std::string header = "generated: class=" + to_string(spec.target) +
                         " order=" + std::to_string(order) + " dim=" + std::to_string(dim) +
                         " seed=" + std::to_string(seed) + " density=" + fmt(density);
    write_tensor_file(output, t, {header});
    int nonzeros = 0;
    for (const double v : t.values()) nonzeros += v != 0.0;
    Report rep;
    rep.add("class", to_string(spec.target));
    rep.add("order", order);
    rep.add("dim", dim);
    rep.add("seed", std::to_string(seed));
    rep.add("density", density);
    rep.add("nonzeros", nonzeros);
    rep.add("written", output);
    rep.print(std::cout);
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured tensor classes, diagonal scalings and complementarity solves"};
  app.require_subcommand(1);

  ClassifyCmd classify_cmd;
  auto* c = app.add_subcommand("classify", "class predicates and the per-row dominance profile");
  c->add_option("input", classify_cmd.input, "tensor file")->required();
  c->add_flag("--hm", classify_cmd.hm, "also run the M/H tensor checks");
  c->add_option("--tol", classify_cmd.tol, "spectral bracket tolerance for --hm");
  c->add_option("--max-iter", classify_cmd.max_iter, "iteration cap for --hm");

  ScaleCmd scale_cmd;
  auto* s = app.add_subcommand("scale", "diagonal scaling making the tensor diagonally dominant");
  s->add_option("input", scale_cmd.input, "tensor file")->required();
  s->add_option("-o,--output", scale_cmd.output, "where to write the scaled tensor")->required();
  s->add_flag("--strict", scale_cmd.strict, "certify strict dominance via a stationary vector");
  s->add_option("--tol", scale_cmd.tol, "spectral bracket tolerance for --strict");
  s->add_option("--max-iter", scale_cmd.max_iter, "iteration cap for --strict");

  DecomposeCmd decompose_cmd;
  auto* d = app.add_subcommand("decompose", "split into a Z part and a nonnegative row-constant part");
  d->add_option("input", decompose_cmd.input, "tensor file")->required();
  d->add_option("-o,--output", decompose_cmd.output, "where to write b_plus and c")->required();

  SolveCmd solve_cmd;
  auto* so = app.add_subcommand("solve", "solve the complementarity problem for the tensor and q");
  so->add_option("input", solve_cmd.input, "tensor file")->required();
  so->add_option("--q", solve_cmd.q_arg, "q vector: comma list or a one-line file")->required();
  so->add_option("--x0", solve_cmd.x0_arg, "start vector: comma list or a one-line file");
  so->add_option("--method", solve_cmd.method, "newton (default) or fixed");
  so->add_option("--tol", solve_cmd.tol, "residual tolerance (default 1e-8)");
  so->add_option("--step", solve_cmd.step, "initial step for the fixed-point method");
  so->add_option("--max-iter", solve_cmd.max_iter, "iteration cap (default 200 newton / 10000 fixed)");

  SpectralCmd spectral_cmd;
  auto* sp = app.add_subcommand("spectral", "spectral radius of a nonnegative tensor");
  sp->add_option("input", spectral_cmd.input, "tensor file")->required();
  sp->add_option("--tol", spectral_cmd.tol, "bracket tolerance (default 1e-10)");
  sp->add_option("--max-iter", spectral_cmd.max_iter, "iteration cap");

  GenerateCmd generate_cmd;
  auto* g = app.add_subcommand("generate", "seeded test tensor of a target class");
  g->add_option("--order", generate_cmd.order, "tensor order m >= 2")->required();
  g->add_option("--dim", generate_cmd.dim, "tensor dimension n >= 1")->required();
  g->add_option("--class", generate_cmd.cls, "nekrasov_z, sdd_z, z_only, nonnegative or arbitrary");
  g->add_option("--seed", generate_cmd.seed, "PRNG seed");
  g->add_option("--density", generate_cmd.density, "nonzero fraction in (0, 1]");
  g->add_option("-o,--output", generate_cmd.output, "where to write the tensor")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c->parsed()) return classify_cmd.run();
    if (s->parsed()) return scale_cmd.run();
    if (d->parsed()) return decompose_cmd.run();
    if (so->parsed()) return solve_cmd.run();
    if (sp->parsed()) return spectral_cmd.run();
    if (g->parsed()) return generate_cmd.run();
  } catch (const tenkit::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
