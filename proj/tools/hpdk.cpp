// hpdk: command-line front end.  Every command prints a JSON report on
// stdout.  Exit codes: 0 ok / criterion holds, 1 internal failure, 2 bad
// input, 3 criterion fails, 4 no counterexample because the criterion holds.

#include "hpdk/catalog.hpp"
#include "hpdk/construction.hpp"
#include "hpdk/exponents.hpp"
#include "hpdk/json_io.hpp"
#include "hpdk/kernel.hpp"
#include "hpdk/linalg.hpp"
#include "hpdk/oracle.hpp"
#include "hpdk/selftest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef HPDK_VERSION
#define HPDK_VERSION "0.0.0"
#endif

namespace {

using hpdk::json;

enum Exit : int { ok = 0, failure = 1, bad_input = 2, criterion_fails = 3, criterion_holds = 4 };

struct Options {
  double tol = 1e-10;
  std::int64_t truncation = 24;
  std::uint64_t seed = 0;
  std::string out;
  bool timing = false;
};

struct Input {
  std::string path;
  std::string bytes;
  json doc;
};

Input load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hpdk::input_error("cannot read " + path);
  Input input{path, {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}, {}};
  try {
    input.doc = json::parse(input.bytes);
  } catch (const json::parse_error& e) {
    throw hpdk::input_error(path + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return input;
}

std::string inputs_digest(const std::vector<const Input*>& inputs) {
  std::string all;
  for (const Input* in : inputs) {
    all += in->bytes;
    all.push_back('\0');
  }
  return hpdk::io::digest(all);
}

// A spec file may also be a full model; the weights are then ignored.
hpdk::ExponentSetSpec spec_of(const json& doc) {
  if (doc.is_object() && (doc.contains("point_weights") || doc.contains("family_weights"))) {
    return hpdk::io::model_from_json(doc).spec();
  }
  return hpdk::io::spec_from_json(doc);
}

// w = 1 on points, (w, rho) = (1, 1) on families.
hpdk::CoefficientModel unit_model(const hpdk::ExponentSetSpec& spec) {
  hpdk::WeightRule rule;
  for (const auto& e : spec.points) rule.point_weights[e] = 1.0;
  rule.family_weights.assign(spec.families.size(), {1.0, 1.0});
  return {spec, rule};
}

std::vector<hpdk::complex> scalars_of(const hpdk::ComplexPointSet& pts) {
  if (pts.dimension() != 1) {
    throw hpdk::input_error("scalar points required (dimension 1), got dimension " +
                            std::to_string(pts.dimension()));
  }
  std::vector<hpdk::complex> out;
  for (const auto& p : pts.points()) out.push_back(p[0]);
  return out;
}

json verdict_json(const hpdk::CriterionVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["effective_modulus"] = v.effective_modulus;
  j["origin_missing"] = v.origin_missing;
  if (v.failing_class) {
    j["failing_class"] = {{"p", v.failing_class->p}, {"q", v.failing_class->q}};
  } else {
    j["failing_class"] = nullptr;
  }
  return j;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

class Reporter {
 public:
  Reporter(std::string command, const Options& opt)
      : command_(std::move(command)), opt_(opt), start_(std::chrono::steady_clock::now()) {}

  int emit(const std::string& digest, json results, int code, bool out_is_report = true) const {
    json report;
    report["command"] = command_;
    report["tool_version"] = HPDK_VERSION;
    report["inputs_digest"] = digest;
    report["seed"] = opt_.seed;
    report["results"] = std::move(results);
    if (opt_.timing) {
      report["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    }
    const std::string text = report.dump(2) + "\n";
    std::cout << text;
    if (out_is_report && !opt_.out.empty()) write_file(opt_.out, text);
    return code;
  }

 private:
  std::string command_;
  const Options& opt_;
  std::chrono::steady_clock::time_point start_;
};

int cmd_jset_check(const Options& opt, const std::string& spec_path, bool sphere) {
  Reporter rep("jset-check", opt);
  const Input in = load(spec_path);
  hpdk::ExponentSetSpec spec = spec_of(in.doc);
  if (sphere) spec.require_origin = false;
  const hpdk::CriterionVerdict v = hpdk::check_strict_criterion(spec);
  json results = verdict_json(v);
  results["sphere"] = sphere;
  return rep.emit(inputs_digest({&in}), results, v.holds ? ok : criterion_fails);
}

int cmd_counterexample(const Options& opt, const std::string& spec_path, const std::string& model_path) {
  Reporter rep("counterexample", opt);
  const Input in = load(spec_path);
  std::vector<const Input*> inputs{&in};
  const hpdk::ExponentSetSpec spec = spec_of(in.doc);
  const hpdk::CriterionVerdict v = hpdk::check_strict_criterion(spec);
  if (v.holds) {
    std::cerr << "hpdk: criterion holds; no counterexample exists\n";
    json results = verdict_json(v);
    results["error"] = "criterion holds; no counterexample exists";
    return rep.emit(inputs_digest(inputs), results, criterion_holds, false);
  }

  Input model_in;
  hpdk::CoefficientModel model = unit_model(spec);
  if (!model_path.empty()) {
    model_in = load(model_path);
    inputs.push_back(&model_in);
    model = hpdk::io::model_from_json(model_in.doc);
    if (!(model.spec() == spec)) throw hpdk::input_error("model exponent set differs from the spec");
  } else if (in.doc.contains("point_weights") || in.doc.contains("family_weights")) {
    model = hpdk::io::model_from_json(in.doc);
  }

  const hpdk::AnnihilationWitness w = hpdk::build_counterexample(spec, v, opt.truncation, opt.tol);
  const double form = hpdk::quadratic_form(model, w.points, Eigen::Map<const hpdk::CVector>(w.coeffs.data(), static_cast<Eigen::Index>(w.coeffs.size())), 1e-12).value;

  json results = verdict_json(v);
  results["witness"] = hpdk::io::witness_to_json(w);
  results["origin"] = w.origin;
  results["points"] = w.points.size();
  results["checked_exponents"] = w.checked_exponents;
  results["max_residual"] = w.max_residual;
  results["quadratic_form"] = form;
  if (!opt.out.empty()) write_file(opt.out, hpdk::io::witness_to_json(w).dump(2) + "\n");
  return rep.emit(inputs_digest(inputs), results, ok, false);
}

int cmd_gram(const Options& opt, const std::string& model_path, const std::string& points_path,
             const std::string& csv_path) {
  Reporter rep("gram", opt);
  const Input model_in = load(model_path);
  const Input points_in = load(points_path);
  const hpdk::CoefficientModel model = hpdk::io::model_from_json(model_in.doc);
  const hpdk::ComplexPointSet pts = hpdk::io::points_from_json(points_in.doc);

  hpdk::GramMatrix inner = hpdk::inner_gram(pts);
  hpdk::GramMatrix kernel = hpdk::kernel_gram(model, inner, opt.tol);
  const hpdk::PsdVerdict verdict = hpdk::psd_check(kernel, opt.tol);
  const auto spectrum = hpdk::hermitian_eigen(kernel.entries, opt.tol);

  json results;
  results["inner_gram"] = hpdk::io::gram_to_json(inner);
  results["kernel_gram"] = hpdk::io::gram_to_json(kernel);
  results["spectrum"] = spectrum.eigenvalues;
  results["scale"] = spectrum.scale;
  results["psd_verdict"] = hpdk::to_string(verdict);
  if (!csv_path.empty()) write_file(csv_path, hpdk::io::gram_to_csv(kernel));
  return rep.emit(inputs_digest({&model_in, &points_in}), results, ok);
}

int cmd_oracle(const Options& opt, const std::string& model_path, const std::string& points_path) {
  Reporter rep("oracle", opt);
  const Input model_in = load(model_path);
  const Input points_in = load(points_path);
  const hpdk::CoefficientModel model = hpdk::io::model_from_json(model_in.doc);
  const std::vector<hpdk::complex> pts = scalars_of(hpdk::io::points_from_json(points_in.doc));

  const hpdk::StrictnessResult r = hpdk::strictness_oracle(model, pts, opt.truncation, opt.tol);
  json results;
  results["verdict"] = hpdk::to_string(r.verdict);
  results["rank"] = r.rank;
  results["points"] = pts.size();
  results["columns"] = r.columns;
  results["tail_mass"] = r.tail_mass;
  results["guard_passed"] = r.guard_passed;
  if (r.witness) {
    results["witness"] = hpdk::io::vector_to_json(*r.witness);
    results["witness_form"] = r.witness_form;
  }
  if (r.guard_passed) {
    hpdk::GramMatrix k = hpdk::kernel_gram(model, hpdk::inner_gram(hpdk::ComplexPointSet::from_scalars(pts)),
                                           std::min(opt.tol, 1e-13));
    hpdk::psd_check(k, opt.tol);
    const bool eigen_strict = *k.min_eigenvalue > opt.tol * k.scale();
    results["cross_check"] = {{"min_eigenvalue", *k.min_eigenvalue},
                              {"scale", k.scale()},
                              {"agrees", eigen_strict == (r.verdict == hpdk::Strictness::strict)}};
  }
  return rep.emit(inputs_digest({&model_in, &points_in}), results, ok);
}

int cmd_split(const Options& opt, const std::string& points_path) {
  Reporter rep("split", opt);
  const Input in = load(points_path);
  const hpdk::ComplexPointSet pts = hpdk::io::points_from_json(in.doc);
  const hpdk::DecompositionResult d = hpdk::split_gram(pts, opt.seed, opt.tol);
  json results;
  results["scalars"] = hpdk::io::vector_to_json(d.scalars);
  results["remainder"] = hpdk::io::matrix_to_json(d.remainder);
  results["gap"] = d.gap;
  results["rank"] = d.rank;
  results["attempts"] = d.attempts;
  results["reconstruction_error"] = d.reconstruction_error;
  results["remainder_min_eigenvalue"] = d.remainder_min_eigenvalue;
  results["scale"] = d.scale;
  return rep.emit(inputs_digest({&in}), results, ok);
}

int cmd_selftest(const Options& opt, const std::string& level) {
  Reporter rep("selftest", opt);
  const auto lvl = level == "full" ? hpdk::selftest::Level::full : hpdk::selftest::Level::quick;
  json suites = json::array();
  bool passed = true;
  for (const auto& s : hpdk::selftest::run_all(lvl, opt.seed)) {
    suites.push_back({{"suite", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"messages", s.messages}});
    std::cerr << s.name << ": " << s.cases - s.failures << "/" << s.cases << " passed\n";
    passed = passed && s.passed();
  }
  json results;
  results["level"] = level;
  results["suites"] = suites;
  results["passed"] = passed;
  return rep.emit(inputs_digest({}), results, passed ? ok : failure);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermitian positive definite dot-product kernels: strictness checks and constructions"};
  app.set_version_flag("--version", std::string(HPDK_VERSION));
  app.require_subcommand(1);

  Options opt;
  const auto common = [&](CLI::App* sub) {
    sub->add_option("--tol", opt.tol, "numerical tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--truncation", opt.truncation, "exponent truncation k + l <= K")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--out", opt.out, "write the artifact to this path");
    sub->add_flag("--timing", opt.timing, "add elapsed_ms to the report");
  };

  std::string spec_path, model_path, points_path, csv_path, level = "quick";
  bool sphere = false;

  auto* jset = app.add_subcommand("jset-check", "decide the strictness criterion for an exponent set");
  common(jset);
  jset->add_option("spec", spec_path, "exponent set JSON")->required();
  jset->add_flag("--sphere", sphere, "drop the (0,0) requirement (kernels on the unit sphere)");

  auto* cex = app.add_subcommand("counterexample", "build points on which the kernel Gram is singular");
  common(cex);
  cex->add_option("spec", spec_path, "exponent set JSON")->required();
  cex->add_option("--model", model_path, "weights for the quadratic form check (default: all 1)");

  auto* gram = app.add_subcommand("gram", "inner and kernel Gram matrices with PSD verdict");
  common(gram);
  gram->add_option("model", model_path, "coefficient model JSON")->required();
  gram->add_option("points", points_path, "point set JSON")->required();
  gram->add_option("--csv", csv_path, "also export the kernel Gram as CSV");

  auto* orc = app.add_subcommand("oracle", "collocation-rank strictness oracle on scalar points");
  common(orc);
  orc->add_option("model", model_path, "coefficient model JSON")->required();
  orc->add_option("points", points_path, "scalar point set JSON")->required();

  auto* split = app.add_subcommand("split", "split a Gram matrix into distinct scalars plus PSD remainder");
  common(split);
  split->add_option("points", points_path, "point set JSON")->required();

  auto* self = app.add_subcommand("selftest", "run the invariant suites");
  common(self);
  self->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : bad_input;
  }

  try {
    if (*jset) return cmd_jset_check(opt, spec_path, sphere);
    if (*cex) return cmd_counterexample(opt, spec_path, model_path);
    if (*gram) return cmd_gram(opt, model_path, points_path, csv_path);
    if (*orc) return cmd_oracle(opt, model_path, points_path);
    if (*split) return cmd_split(opt, points_path);
    if (*self) return cmd_selftest(opt, level);
  } catch (const hpdk::input_error& e) {
    std::cerr << "hpdk: " << e.what() << "\n";
    return bad_input;
  } catch (const json::exception& e) {
    std::cerr << "hpdk: " << e.what() << "\n";
    return bad_input;
  } catch (const std::invalid_argument& e) {
    std::cerr << "hpdk: " << e.what() << "\n";
    return bad_input;
  } catch (const hpdk::contract_violation& e) {
    std::cerr << "hpdk: " << e.what() << "\n";
    return bad_input;
  } catch (const std::exception& e) {
    std::cerr << "hpdk: " << e.what() << "\n";
    return failure;
  }
  return failure;
}
