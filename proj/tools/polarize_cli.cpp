// polarize: involutive-algebra polarization toolkit
//
// Verbs: kappa, verify, groups, moments, build-check. Every run emits one
// JSON report (schema polarize-report/1) on stdout and optionally to --out.
// Exit codes: 0 success, 2 verification failure (with witness), 3 invalid
// input, 4 size/capability limit.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "polarize/io.hpp"
#include "polarize/polarize.hpp"
#include "polarize/report.hpp"
#include "polarize/spec_parse.hpp"

namespace {

using namespace polarize;

struct Options {
  std::string algebra;
  std::string group;
  std::string backend = "auto";
  std::string out;
  std::string what;
  std::string quadrance_table;
  std::string characters;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  std::size_t rank = 2;
  double tolerance = kDefaultEpsilon;
  bool full_checks = false;
};

GroupTableLoader file_loader() {
  return [](const std::string& path) { return ingest_group_table(path); };
}

void emit(const OrderedJson& j, const Options& opt) {
  const std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!opt.out.empty()) {
    std::ofstream f(opt.out);
    if (!f) throw ValidationError("cannot write report to " + opt.out);
    f << text;
  }
}

int emit_error(const std::exception& e, const Options& opt) {
  int code = 3;
  std::string type = "Error";
  OrderedJson witness;
  if (dynamic_cast<const SizeLimitError*>(&e) || dynamic_cast<const NotClosedError*>(&e)) {
    code = 4;
  }
  if (auto* p = dynamic_cast<const ParallelogramViolation*>(&e)) {
    code = 2;
    witness = OrderedJson::parse(p->witness_json);
  }
  if (auto* p = dynamic_cast<const ReconstructionFailure*>(&e)) {
    code = 2;
    witness = OrderedJson::parse(p->witness_json);
  }
  if (dynamic_cast<const StructuralError*>(&e)) type = "StructuralError";
  else if (dynamic_cast<const ParallelogramViolation*>(&e)) type = "ParallelogramViolation";
  else if (dynamic_cast<const ReconstructionFailure*>(&e)) type = "ReconstructionFailure";
  else if (dynamic_cast<const ValidationError*>(&e)) type = "ValidationError";
  else if (dynamic_cast<const PreconditionError*>(&e)) type = "PreconditionError";
  else if (dynamic_cast<const NotInvertibleError*>(&e)) type = "NotInvertibleError";
  else if (dynamic_cast<const SizeLimitError*>(&e)) type = "SizeLimitError";
  else if (dynamic_cast<const NotClosedError*>(&e)) type = "NotClosedError";
  else if (dynamic_cast<const LookupError*>(&e)) type = "LookupError";
  else if (dynamic_cast<const NumericFailure*>(&e)) type = "NumericFailure";

  OrderedJson j;
  j["schema"] = kReportSchema;
  j["tool_version"] = kVersion;
  j["error"] = OrderedJson::object();
  j["error"]["type"] = type;
  j["error"]["message"] = e.what();
  if (!witness.is_null()) j["error"]["witness"] = witness;
  j["exit_code"] = code;
  try {
    emit(j, opt);
  } catch (const std::exception&) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return code;
}

std::string resolve_backend(const AlgebraDesc& desc, const GroupId& gid, const Options& opt) {
  const bool needs_float = group_requires_float(desc, gid);
  if (opt.backend == "auto") return needs_float ? "float" : "rational";
  if (opt.backend == "rational" && needs_float)
    throw ValidationError("group " + gid.to_string() +
                          " has irrational entries; exact rational run is impossible");
  if (opt.backend != "rational" && opt.backend != "float")
    throw ValidationError("backend must be rational, float or auto");
  return opt.backend;
}

/// Closed-form kappa where one is known: division algebras and matrix
/// algebras over them through the decomposition formula, Clifford algebras
/// through the signature formula, direct sums blockwise.
template <typename S>
std::optional<Element<S>> closed_form_kappa(const AlgebraPtr<S>& algebra,
                                            const AlgebraDesc& desc) {
  switch (desc.kind) {
    case AlgebraDesc::Kind::R:
      return algebra->scalar_element(kappa_closed_form<S>({{{1, 1}}}).front());
    case AlgebraDesc::Kind::C:
      return algebra->scalar_element(kappa_closed_form<S>({{{1, 2}}}).front());
    case AlgebraDesc::Kind::H:
      return algebra->scalar_element(kappa_closed_form<S>({{{1, 4}}}).front());
    case AlgebraDesc::Kind::Matrix: {
      const auto& base = desc.parts[0];
      int delta = 0;
      if (base.kind == AlgebraDesc::Kind::R) delta = 1;
      else if (base.kind == AlgebraDesc::Kind::C) delta = 2;
      else if (base.kind == AlgebraDesc::Kind::H) delta = 4;
      else return std::nullopt;
      return algebra->scalar_element(kappa_closed_form<S>({{{desc.n, delta}}}).front());
    }
    case AlgebraDesc::Kind::Clifford:
      return algebra->scalar_element(kappa_clifford_closed_form<S>(desc.p, desc.q));
    case AlgebraDesc::Kind::Sum: {
      const auto& prov = algebra->provenance();
      std::vector<S> coords(algebra->dim(), scalar_traits<S>::zero());
      for (std::size_t p = 0; p < prov->parts.size(); ++p) {
        auto part_kappa = closed_form_kappa(prov->parts[p], desc.parts[p]);
        if (!part_kappa) return std::nullopt;
        for (std::size_t a = 0; a < prov->parts[p]->dim(); ++a)
          coords[prov->part_offsets[p] + a] = (*part_kappa)[a];
      }
      return algebra->element(std::move(coords));
    }
    default:
      return std::nullopt;
  }
}

template <typename S>
int run_kappa(const AlgebraDesc& desc, const GroupId& gid, const Options& opt, RunReport& rep) {
  const auto algebra = build_algebra<S>(desc, file_loader(), opt.tolerance);
  const auto group = build_group<S>(algebra, desc, gid);
  KappaReport<S> kr = kappa_numeric(group);
  if (auto cf = closed_form_kappa(algebra, desc)) attach_closed_form(kr, *cf);
  if (!opt.characters.empty()) {
    const auto ct = character_table_from_json(load_json_file(opt.characters));
    attach_closed_form(kr, kappa_group_algebra_characters(algebra, ct));
  }
  rep.outputs = kappa_report_json(kr);
  const bool residual_ok = to_double(kr.residual) <= (scalar_traits<S>::exact ? 0.0 : opt.tolerance);
  const bool closed_ok =
      !kr.closed_form_error ||
      to_double(*kr.closed_form_error) <= (scalar_traits<S>::exact ? 0.0 : opt.tolerance);
  rep.outputs["pass"] = residual_ok && closed_ok;
  return (residual_ok && closed_ok) ? 0 : 2;
}

template <typename S>
int run_groups(const AlgebraDesc& desc, const Options& opt, RunReport& rep) {
  const auto algebra = build_algebra<S>(desc, file_loader(), opt.tolerance);
  OrderedJson list = OrderedJson::array();
  for (const auto& gid : catalog_group_ids(desc)) {
    OrderedJson row;
    row["id"] = gid.to_string();
    if (group_requires_float(desc, gid) && scalar_traits<S>::exact) {
      row["backend"] = "float";
      row["note"] = "requires float backend";
      list.push_back(std::move(row));
      continue;
    }
    const auto group = build_group<S>(algebra, desc, gid);
    const auto cert = certify_polarizing(group);
    row["order"] = group.size();
    row["certificate"] = certificate_json(cert);
    list.push_back(std::move(row));
  }
  rep.outputs["groups"] = std::move(list);
  return 0;
}

/// Groups listing resolves the backend per entry so that irrational catalog
/// entries are certified too.
int run_groups_mixed(const AlgebraDesc& desc, const Options& opt, RunReport& rep) {
  const auto algebra_r = build_algebra<Rational>(desc, file_loader(), opt.tolerance);
  const auto algebra_f = build_algebra<double>(desc, file_loader(), opt.tolerance);
  OrderedJson list = OrderedJson::array();
  for (const auto& gid : catalog_group_ids(desc)) {
    OrderedJson row;
    row["id"] = gid.to_string();
    if (group_requires_float(desc, gid)) {
      const auto group = build_group<double>(algebra_f, desc, gid);
      row["order"] = group.size();
      row["backend"] = "float";
      row["certificate"] = certificate_json(certify_polarizing(group));
    } else {
      const auto group = build_group<Rational>(algebra_r, desc, gid);
      row["order"] = group.size();
      row["backend"] = "rational";
      row["certificate"] = certificate_json(certify_polarizing(group));
    }
    list.push_back(std::move(row));
  }
  rep.outputs["groups"] = std::move(list);
  return 0;
}

template <typename S>
int run_moments(const AlgebraDesc& desc, const GroupId& gid, const Options& opt, RunReport& rep) {
  const auto algebra = build_algebra<S>(desc, file_loader(), opt.tolerance);
  const auto group = build_group<S>(algebra, desc, gid);
  OrderedJson moments_json = OrderedJson::array();
  for (unsigned k = 0; k <= 4; ++k) moments_json.push_back(element_json(moment(group, k)));
  rep.outputs["order"] = group.size();
  rep.outputs["moments"] = std::move(moments_json);
  rep.outputs["certificate"] = certificate_json(certify_polarizing(group));
  return 0;
}

template <typename S>
int run_build_check(const AlgebraDesc& desc, const Options& opt, RunReport& rep) {
  const auto algebra = build_algebra<S>(desc, file_loader(), opt.tolerance,
                                        opt.full_checks ? CheckMode::full : CheckMode::automatic);
  rep.outputs["name"] = algebra->name();
  rep.outputs["dim"] = algebra->dim();
  rep.outputs["checks"] = opt.full_checks ? "full" : "automatic";
  rep.outputs["ok"] = true;
  return 0;
}

template <typename S>
int run_verify(const AlgebraDesc& desc, const GroupId& gid, const Options& opt, RunReport& rep) {
  const auto algebra = build_algebra<S>(desc, file_loader(), opt.tolerance);
  const double threshold = scalar_traits<S>::exact ? 0.0 : 1e-8;

  if (opt.what == "polarization") {
    const auto group = build_group<S>(algebra, desc, gid);
    const std::size_t forms = std::min<std::size_t>(opt.trials, 10);
    const std::size_t pairs = (opt.trials + forms - 1) / forms;
    S worst = scalar_traits<S>::zero();
    for (std::size_t f = 0; f < forms; ++f) {
      const auto form = random_hermitian_form(algebra, opt.rank, opt.seed + 7919 * f);
      const S r = verify_polarization(form, group, pairs, opt.seed + f);
      if (r > worst) worst = r;
    }
    rep.outputs["max_residual"] = scalar_json(worst);
    rep.outputs["forms"] = forms;
    rep.outputs["pairs_per_form"] = pairs;
    rep.outputs["rank"] = opt.rank;
    const bool pass = to_double(worst) <= threshold;
    rep.outputs["pass"] = pass;
    return pass ? 0 : 2;
  }

  if (opt.what == "parallelogram") {
    if (!opt.quadrance_table.empty()) {
      const auto data = quadrance_table_from_json(load_json_file(opt.quadrance_table));
      const auto table = make_table_quadrance<S>(algebra, data);
      auto [residual, pairs] = check_parallelogram_on_grid(table);
      rep.outputs["max_residual"] = scalar_json(residual);
      rep.outputs["grid_pairs"] = pairs;
      rep.outputs["pass"] = true;
      return 0;
    }
    const auto form = random_hermitian_form(algebra, opt.rank, opt.seed);
    const auto q = quadrance_of(form);
    const S classical = check_classical_parallelogram(q, opt.trials, opt.seed);
    const auto pm = close_group<S>({-(algebra->unit())}, 2, "pm-one");
    const S general = check_generalized_parallelogram(q, pm, opt.trials, opt.seed);
    rep.outputs["classical_residual"] = scalar_json(classical);
    rep.outputs["generalized_residual_pm_one"] = scalar_json(general);
    const bool pass = to_double(classical) <= threshold && to_double(general) <= threshold;
    rep.outputs["pass"] = pass;
    return pass ? 0 : 2;
  }

  if (opt.what == "jvn") {
    if (!opt.quadrance_table.empty()) {
      // Table quadrances are only defined on their grid: the reconstruction
      // gate runs over derivable grid pairs and a violation is the expected
      // demonstration path.
      const auto data = quadrance_table_from_json(load_json_file(opt.quadrance_table));
      if (parse_algebra_desc(data.algebra_spec).text != desc.text)
        throw ValidationError("quadrance table algebra does not match --algebra");
      const auto table = make_table_quadrance<S>(algebra, data);
      auto [residual, pairs] = check_parallelogram_on_grid(table);
      rep.outputs["parallelogram_residual"] = scalar_json(residual);
      rep.outputs["grid_pairs"] = pairs;
      rep.outputs["note"] = "grid quadrance: reconstruction limited to the parallelogram gate";
      rep.outputs["pass"] = true;
      return 0;
    }
    const auto group = build_group<S>(algebra, desc, gid);
    const auto kappa = kappa_numeric(group).kappa;
    const std::size_t forms = std::min<std::size_t>(opt.trials, 10);
    const std::size_t inner = (opt.trials + forms - 1) / forms;
    S worst_unique = scalar_traits<S>::zero();
    OrderedJson last_report;
    for (std::size_t f = 0; f < forms; ++f) {
      const auto form = random_hermitian_form(algebra, opt.rank, opt.seed + 104729 * f);
      const auto q = quadrance_of(form);
      const auto jvn = jvn_reconstruct(q, group, kappa, inner, opt.seed + f);
      SplitMix64 rng = substream(opt.seed ^ 0x756E71ull, f);
      for (std::size_t t = 0; t < inner; ++t) {
        const auto x = random_module_vector(algebra, opt.rank, rng);
        const auto y = random_module_vector(algebra, opt.rank, rng);
        const S r = (jvn.reconstructed(x, y) - eval_form(form, x, y)).max_abs();
        if (r > worst_unique) worst_unique = r;
      }
      last_report = OrderedJson{
          {"parallelogram_residual", scalar_json(jvn.report.parallelogram_residual)},
          {"diagonal_residual", scalar_json(jvn.report.diagonal_residual)},
          {"hermitian_residual", scalar_json(jvn.report.hermitian_residual)},
          {"additivity_residual", scalar_json(jvn.report.additivity_residual)},
          {"equivariance_residual", scalar_json(jvn.report.equivariance_residual)},
          {"rational_homogeneity_residual",
           scalar_json(jvn.report.rational_homogeneity_residual)},
      };
    }
    rep.outputs["uniqueness_residual"] = scalar_json(worst_unique);
    rep.outputs["sampled_properties"] = last_report;
    rep.outputs["forms"] = forms;
    const bool pass = to_double(worst_unique) <= threshold;
    rep.outputs["pass"] = pass;
    return pass ? 0 : 2;
  }

  if (opt.what == "moments") {
    const auto group = build_group<S>(algebra, desc, gid);
    const auto cert = certify_polarizing(group);
    const auto mu1 = moment(group, 1);
    const auto mu2 = moment(group, 2);
    bool central = true;
    for (std::size_t i = 0; i < group.size() && central; ++i)
      central = group[i] * mu2 == mu2 * group[i];
    rep.outputs["certificate"] = certificate_json(cert);
    rep.outputs["mu1"] = element_json(mu1);
    rep.outputs["mu2"] = element_json(mu2);
    rep.outputs["mu2_central"] = central;
    bool matrix_identity = true;
    if (desc.kind == AlgebraDesc::Kind::Matrix && gid.kind == GroupId::Kind::DeltaGH) {
      const auto& prov = algebra->provenance();
      const auto base_group =
          build_group<S>(prov->base, desc.parts[0], default_group_id(desc.parts[0]));
      matrix_identity = mu2_matrix_identity_check(algebra, base_group);
      rep.outputs["mu2_matrix_identity"] = matrix_identity;
    }
    const bool pass = cert.is_polarizing && mu1.is_zero() && central && matrix_identity;
    rep.outputs["pass"] = pass;
    return pass ? 0 : 2;
  }

  throw ValidationError("verify expects one of: polarization, jvn, parallelogram, moments");
}

template <typename Fn>
int timed_run(const Options& opt, const std::string& operation, const std::string& group_label,
              const std::string& backend, Fn&& body) {
  RunReport rep;
  rep.operation = operation;
  rep.algebra_spec = opt.algebra;
  rep.group_id = group_label;
  rep.backend = backend;
  rep.seed = opt.seed;
  rep.tolerance = opt.tolerance;
  const auto start = std::chrono::steady_clock::now();
  const int code = body(rep);
  rep.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  OrderedJson j = rep.to_json();
  j["exit_code"] = code;
  emit(j, opt);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polarization constants and identities over real involutive algebras"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd, bool with_group) {
    cmd->add_option("--algebra", opt.algebra,
                    "algebra spec: R | C | H | M(n,<spec>) | Clifford(p,q) | "
                    "GroupAlgebra(<path>) | Sum(<spec>,...)")
        ->required();
    if (with_group) cmd->add_option("--group", opt.group, "catalog group id (default per algebra)");
    cmd->add_option("--backend", opt.backend, "rational | float | auto (default auto)");
    cmd->add_option("--out", opt.out, "also write the JSON report to this path");
    cmd->add_option("--tolerance", opt.tolerance, "float-backend equality tolerance");
  };

  auto* kappa_cmd = app.add_subcommand("kappa", "polarization constant via (1 + mu2)^-1");
  add_common(kappa_cmd, true);
  kappa_cmd->add_option("--characters", opt.characters,
                        "character table JSON for the group-algebra closed form");

  auto* verify_cmd =
      app.add_subcommand("verify", "identity suites: polarization | jvn | parallelogram | moments");
  verify_cmd->add_option("what", opt.what, "which suite to run")->required();
  add_common(verify_cmd, true);
  verify_cmd->add_option("--trials", opt.trials, "number of sampled trials (default 100)");
  verify_cmd->add_option("--seed", opt.seed, "PRNG seed (SplitMix64 streams)");
  verify_cmd->add_option("--rank", opt.rank, "free-module rank m (default 2)");
  verify_cmd->add_option("--quadrance-table", opt.quadrance_table,
                         "user-supplied quadrance grid JSON");

  auto* groups_cmd = app.add_subcommand("groups", "list catalog groups with certificates");
  add_common(groups_cmd, false);

  auto* moments_cmd = app.add_subcommand("moments", "discrete Haar moments mu_0..mu_4");
  add_common(moments_cmd, true);

  auto* build_cmd = app.add_subcommand("build-check", "construct and validate an algebra");
  add_common(build_cmd, false);
  build_cmd->add_flag("--full-checks", opt.full_checks, "force full associativity checking");

  CLI11_PARSE(app, argc, argv);

  try {
    const AlgebraDesc desc = parse_algebra_desc(opt.algebra);
    if (app.got_subcommand("groups")) {
      return timed_run(opt, "groups", "", "mixed",
                       [&](RunReport& rep) { return run_groups_mixed(desc, opt, rep); });
    }
    if (app.got_subcommand("build-check")) {
      const std::string backend = opt.backend == "auto" ? "rational" : opt.backend;
      return timed_run(opt, "build-check", "", backend, [&](RunReport& rep) {
        return backend == "rational" ? run_build_check<Rational>(desc, opt, rep)
                                     : run_build_check<double>(desc, opt, rep);
      });
    }

    const GroupId gid = opt.group.empty() ? default_group_id(desc) : parse_group_id(opt.group);
    const std::string backend = resolve_backend(desc, gid, opt);
    const std::string op = app.got_subcommand("kappa")     ? "kappa"
                           : app.got_subcommand("moments") ? "moments"
                                                           : "verify:" + opt.what;
    return timed_run(opt, op, gid.to_string(), backend, [&](RunReport& rep) {
      if (app.got_subcommand("kappa"))
        return backend == "rational" ? run_kappa<Rational>(desc, gid, opt, rep)
                                     : run_kappa<double>(desc, gid, opt, rep);
      if (app.got_subcommand("moments"))
        return backend == "rational" ? run_moments<Rational>(desc, gid, opt, rep)
                                     : run_moments<double>(desc, gid, opt, rep);
      return backend == "rational" ? run_verify<Rational>(desc, gid, opt, rep)
                                   : run_verify<double>(desc, gid, opt, rep);
    });
  } catch (const std::exception& e) {
    return emit_error(e, opt);
  }
}
