#include "divalg/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"

#include "divalg/algebra.hpp"
#include "divalg/config.hpp"
#include "divalg/identities.hpp"
#include "divalg/linalg.hpp"
#include "divalg/maxsubfield.hpp"
#include "divalg/rewrite.hpp"
#include "divalg/rng.hpp"
#include "divalg/subfield.hpp"
#include "divalg/words.hpp"

namespace divalg {

namespace {

using ordered_json = nlohmann::ordered_json;

Config load_config(const std::string& path) {
  if (path.empty()) return default_config();
  std::ifstream in(path);
  if (!in) fail(Err::ValidationError, "cannot read config file " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

SubfieldCtx make_subfield_ctx(const Config& cfg, const AlgebraPtr& alg) {
  if (!cfg.generator) {
    fail(Err::ValidationError, "this subcommand needs a [subfield] generator in the config");
  }
  return build_subfield(alg, parse_element(*cfg.generator, alg));
}

// Smallest alphabet covering the letters mentioned in the word text.
int infer_alphabet(const std::string& text) {
  int m = 1;
  for (std::size_t p = 0; p + 1 < text.size(); ++p) {
    if (text[p] == 'x' && text[p + 1] >= '1' && text[p + 1] <= '9') {
      m = std::max(m, text[p + 1] - '0');
    }
  }
  return m;
}

// Compact row-text form: rows joined by ';', entries by ','.
std::string format_matrix(const Matrix& M) {
  std::string out;
  for (int r = 0; r < M.rows(); ++r) {
    if (r > 0) out += ";";
    for (int c = 0; c < M.cols(); ++c) {
      if (c > 0) out += ",";
      out += M.at(r, c).str();
    }
  }
  return out;
}

void emit(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

std::string place_name(std::int64_t p) { return p == 0 ? "real" : std::to_string(p); }

int run_minpoly(const Config& cfg, const std::string& element, bool json, std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const AlgebraElem x = parse_element(element, alg);
  const UPoly p = minpoly_element(x);
  if (json) {
    ordered_json j;
    j["op"] = "minpoly";
    j["element"] = format_element(x);
    j["minpoly"] = p.str();
    emit(out, j);
  } else {
    out << p.str() << "\n";
  }
  return 0;
}

int run_leftminpoly(const Config& cfg, const std::string& element, bool json, std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const SubfieldCtx ctx = make_subfield_ctx(cfg, alg);
  const AlgebraElem x = parse_element(element, alg);
  const UPoly p = left_minpoly(ctx, x);
  if (json) {
    ordered_json j;
    j["op"] = "leftminpoly";
    j["element"] = format_element(x);
    j["generator"] = format_element(ctx.generator);
    j["left_minpoly"] = p.str();
    emit(out, j);
  } else {
    out << p.str() << "\n";
  }
  return 0;
}

int run_gd_check(const Config& cfg, const std::string& element, int degree, bool json,
                 std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const AlgebraElem x = parse_element(element, alg);
  const bool bounded = is_alg_bounded(x, degree);
  if (json) {
    ordered_json j;
    j["op"] = "gd-check";
    j["element"] = format_element(x);
    j["degree"] = degree;
    j["bounded"] = bounded;
    emit(out, j);
  } else {
    out << (bounded ? "true" : "false") << "\n";
  }
  return bounded ? 0 : 1;
}

int run_commutator_search(const Config& cfg, const std::string& element, int budget,
                          std::uint64_t seed, bool json, std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const AlgebraElem x = parse_element(element, alg);
  const CommutatorWitness mult = search_mult_commutator(x, budget, seed);
  const CommutatorWitness add = search_add_commutator(x, budget, seed);
  if (json) {
    ordered_json j;
    j["op"] = "commutator-search";
    j["element"] = format_element(x);
    j["seed"] = seed;
    j["budget"] = budget;
    ordered_json jm;
    jm["partner"] = format_element(mult.partner);
    jm["commutator"] = format_element(mult.commutator);
    jm["certificate"] = mult.certificate.str();
    jm["tried"] = mult.tried;
    j["mult"] = jm;
    ordered_json ja;
    ja["partner"] = format_element(add.partner);
    ja["commutator"] = format_element(add.commutator);
    ja["certificate"] = add.certificate.str();
    ja["tried"] = add.tried;
    j["add"] = ja;
    emit(out, j);
  } else {
    out << "mult partner: " << format_element(mult.partner) << "\n";
    out << "mult commutator: " << format_element(mult.commutator) << "\n";
    out << "mult certificate: " << mult.certificate.str() << "\n";
    out << "mult tried: " << mult.tried << "\n";
    out << "add partner: " << format_element(add.partner) << "\n";
    out << "add commutator: " << format_element(add.commutator) << "\n";
    out << "add certificate: " << add.certificate.str() << "\n";
    out << "add tried: " << add.tried << "\n";
  }
  return 0;
}

int run_regrep(const Config& cfg, const std::string& element, bool json, std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const SubfieldCtx ctx = make_subfield_ctx(cfg, alg);
  const AlgebraElem x = parse_element(element, alg);
  const Matrix R = regular_rep(ctx, x);
  if (json) {
    ordered_json j;
    j["op"] = "regrep";
    j["element"] = format_element(x);
    j["generator"] = format_element(ctx.generator);
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < R.rows(); ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < R.cols(); ++c) row.push_back(R.at(r, c).str());
      rows.push_back(row);
    }
    j["matrix"] = rows;
    emit(out, j);
  } else {
    out << format_matrix(R) << "\n";
  }
  return 0;
}

int run_word_decompose(const std::string& word_text, int degree, bool json, std::ostream& out) {
  const int m = infer_alphabet(word_text);
  const Word w = Word::parse(m, word_text);
  const auto decomp = bell_decompose(w, degree);
  if (json) {
    ordered_json j;
    j["op"] = "word-decompose";
    j["word"] = w.str();
    j["degree"] = degree;
    if (!decomp) {
      j["kind"] = "none";
    } else if (decomp->kind == BellDecomposition::Kind::Power) {
      j["kind"] = "power";
      j["v1"] = decomp->power->v1.str();
      j["u"] = decomp->power->u.str();
      j["v2"] = decomp->power->v2.str();
      j["d"] = decomp->power->d;
    } else {
      j["kind"] = "shirshov";
      j["v1"] = decomp->shirshov->v1.str();
      ordered_json parts = ordered_json::array();
      for (const Word& part : decomp->shirshov->parts) parts.push_back(part.str());
      j["parts"] = parts;
      j["v2"] = decomp->shirshov->v2.str();
    }
    emit(out, j);
  } else if (!decomp) {
    out << "no decomposition at degree " << degree << "\n";
  } else if (decomp->kind == BellDecomposition::Kind::Power) {
    out << "kind: power\n";
    out << "v1: " << decomp->power->v1.str() << "\n";
    out << "u: " << decomp->power->u.str() << "\n";
    out << "v2: " << decomp->power->v2.str() << "\n";
    out << "d: " << decomp->power->d << "\n";
  } else {
    out << "kind: shirshov\n";
    out << "v1: " << decomp->shirshov->v1.str() << "\n";
    std::string parts;
    for (const Word& part : decomp->shirshov->parts) {
      if (!parts.empty()) parts += " | ";
      parts += part.str();
    }
    out << "parts: " << parts << "\n";
    out << "v2: " << decomp->shirshov->v2.str() << "\n";
  }
  return decomp ? 0 : 1;
}

int run_rewrite(const Config& cfg, const std::string& word_text, int degree, int cap, int steps,
                bool json, std::ostream& out) {
  const AlgebraPtr alg = cfg.make_algebra();
  const SubfieldCtx ctx = make_subfield_ctx(cfg, alg);
  const int m = infer_alphabet(word_text);
  const Word w = Word::parse(m, word_text);
  if (m >= alg->dim()) {
    fail(Err::ValidationError, "word uses " + std::to_string(m) +
                                   " letters but the algebra has only " +
                                   std::to_string(alg->dim()) + " basis elements");
  }
  // Letter x_t stands for the t-th basis element (x1 = i, x2 = j in a
  // quaternion algebra).
  std::vector<AlgebraElem> gens;
  gens.reserve(static_cast<std::size_t>(m));
  for (int t = 1; t <= m; ++t) gens.push_back(AlgebraElem::basis(alg, t));
  const FormalSum sum = rewrite_word(ctx, gens, w, degree, cap, steps);
  const bool exact = eval_formal_sum(ctx, gens, sum) == eval_word(gens, w);
  if (!exact) fail(Err::ValidationError, "internal error: rewrite changed the value");
  if (json) {
    ordered_json j;
    j["op"] = "rewrite";
    j["word"] = w.str();
    j["degree"] = degree;
    j["cap"] = cap;
    ordered_json terms = ordered_json::array();
    for (const auto& [tw, c] : sum.terms()) {
      ordered_json term;
      term["word"] = tw.str();
      term["coeff"] = c.str();
      terms.push_back(term);
    }
    j["terms"] = terms;
    j["check"] = "exact";
    emit(out, j);
  } else {
    out << sum.str() << "\n";
    out << "check: exact\n";
  }
  return 0;
}

int run_verify(const Config& cfg, const std::string& mode_text, int samples, std::uint64_t seed,
               bool json, std::ostream& out) {
  const auto mode = parse_bound_mode(mode_text);
  if (!mode) {
    fail(Err::ValidationError, "unknown mode \"" + mode_text +
                                   "\"; expected normal_subgroup, mult_comm, or add_comm");
  }
  const AlgebraPtr alg = cfg.make_algebra();
  bool division_certified = false;
  if (cfg.algebra_kind == "quaternion" && cfg.field_kind == "rational") {
    const FieldCtx F = cfg.make_field();
    division_certified =
        is_division_quaternion(FieldElem::parse(F, cfg.quat_a), FieldElem::parse(F, cfg.quat_b));
  }
  Sampler rng(seed);
  const DegreeBoundReport report = verify_degree_bound(alg, rng, *mode, samples, division_certified);
  if (json) {
    ordered_json j;
    j["mode"] = bound_mode_name(report.mode);
    j["d"] = report.d;
    j["n"] = report.n;
    if (report.witness) {
      j["witness"] = format_element(*report.witness);
    } else {
      j["witness"] = nullptr;
    }
    if (report.certificate) {
      j["certificate"] = report.certificate->str();
    } else {
      j["certificate"] = nullptr;
    }
    j["bound_holds"] = report.bound_holds;
    j["tight"] = report.tight;
    j["surrogate"] = !report.division_certified;
    j["samples"] = report.samples;
    ordered_json notes = ordered_json::array();
    for (const auto& note : report.notes) notes.push_back(note);
    j["notes"] = notes;
    emit(out, j);
  } else {
    for (const auto& line : report.to_lines()) out << line << "\n";
  }
  return report.bound_holds ? 0 : 1;
}

int run_hilbert(const Config& cfg, bool json, std::ostream& out) {
  if (cfg.algebra_kind != "quaternion" || cfg.field_kind != "rational") {
    fail(Err::ValidationError, "hilbert needs a quaternion algebra over the rationals");
  }
  const FieldCtx F = cfg.make_field();
  const FieldElem a = FieldElem::parse(F, cfg.quat_a);
  const FieldElem b = FieldElem::parse(F, cfg.quat_b);
  const auto places = hilbert_relevant_places(a.rat(), b.rat());
  const bool division = is_division_quaternion(a, b);
  if (json) {
    ordered_json j;
    j["op"] = "hilbert";
    j["a"] = a.str();
    j["b"] = b.str();
    ordered_json pl = ordered_json::array();
    for (const auto p : places) pl.push_back(place_name(p));
    j["places"] = pl;
    ordered_json sym;
    for (const auto p : places) sym[place_name(p)] = hilbert_symbol(a.rat(), b.rat(), p);
    j["symbols"] = sym;
    j["division"] = division;
    emit(out, j);
  } else {
    out << "a: " << a.str() << "\n";
    out << "b: " << b.str() << "\n";
    std::string line;
    for (const auto p : places) {
      if (!line.empty()) line += " ";
      line += place_name(p);
    }
    out << "places: " << line << "\n";
    for (const auto p : places) {
      out << "symbol[" << place_name(p) << "]: " << hilbert_symbol(a.rat(), b.rat(), p) << "\n";
    }
    out << "division: " << (division ? "true" : "false") << "\n";
  }
  return division ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact computational toolkit for finite-dimensional division algebras"};
  app.require_subcommand(1);

  std::string config_path;
  std::string element;
  std::string word_text;
  std::string mode_text = "normal_subgroup";
  int degree = 2;
  int budget = 200;
  int samples = 200;
  int cap = 0;
  int steps = 10000;
  std::uint64_t seed = 0;
  bool json = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "configuration file (sections [field], [algebra], [subfield])");
    sub->add_flag("--json", json, "machine-readable output with stable key order");
  };

  auto* mp = app.add_subcommand("minpoly", "minimal polynomial over the scalar field");
  add_common(mp);
  mp->add_option("--element", element, "element expression")->required();

  auto* lmp = app.add_subcommand("leftminpoly",
                                 "left minimal polynomial over the configured subfield");
  add_common(lmp);
  lmp->add_option("--element", element, "element expression")->required();

  auto* gd = app.add_subcommand("gd-check", "test the degree-d commutator identity for an element");
  add_common(gd);
  gd->add_option("--element", element, "element expression")->required();
  gd->add_option("--degree", degree, "identity degree d")->required();

  auto* cs = app.add_subcommand("commutator-search",
                                "find partners whose commutators generate maximal subfields");
  add_common(cs);
  cs->add_option("--element", element, "element expression")->required();
  cs->add_option("--budget", budget, "random attempts after the deterministic sweep");
  auto* cs_seed = cs->add_option("--seed", seed, "random seed");

  auto* rr = app.add_subcommand("regrep", "matrix of left multiplication over the subfield");
  add_common(rr);
  rr->add_option("--element", element, "element expression")->required();

  auto* wdec = app.add_subcommand("word-decompose", "power or dominant-block split of a word");
  wdec->add_flag("--json", json, "machine-readable output with stable key order");
  wdec->add_option("--word", word_text, "word like \"x1 x2 x1\"")->required();
  wdec->add_option("--degree", degree, "decomposition degree d")->required();

  auto* rw = app.add_subcommand("rewrite", "reduce a word to a subfield combination of short words");
  add_common(rw);
  rw->add_option("--word", word_text, "word like \"x1 x2 x1 x2\"")->required();
  rw->add_option("--degree", degree, "reduction degree d");
  rw->add_option("--cap", cap, "target support length")->required();
  rw->add_option("--budget", steps, "step budget");

  auto* vf = app.add_subcommand("verify", "sampled degree-bound report for the configured algebra");
  add_common(vf);
  vf->add_option("mode", mode_text, "normal_subgroup | mult_comm | add_comm");
  vf->add_option("--budget", samples, "sample count");
  auto* vf_seed = vf->add_option("--seed", seed, "random seed");

  auto* hb = app.add_subcommand("hilbert", "Hilbert symbols and the division test for (a,b/Q)");
  add_common(hb);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));

    if (json && cs->parsed() && cs_seed->count() == 0) {
      fail(Err::ValidationError, "--json needs an explicit --seed for randomized subcommands");
    }
    if (json && vf->parsed() && vf_seed->count() == 0) {
      fail(Err::ValidationError, "--json needs an explicit --seed for randomized subcommands");
    }

    const Config cfg = load_config(config_path);
    if (mp->parsed()) return run_minpoly(cfg, element, json, out);
    if (lmp->parsed()) return run_leftminpoly(cfg, element, json, out);
    if (gd->parsed()) return run_gd_check(cfg, element, degree, json, out);
    if (cs->parsed()) return run_commutator_search(cfg, element, budget, seed, json, out);
    if (rr->parsed()) return run_regrep(cfg, element, json, out);
    if (wdec->parsed()) return run_word_decompose(word_text, degree, json, out);
    if (rw->parsed()) return run_rewrite(cfg, word_text, degree, cap, steps, json, out);
    if (vf->parsed()) return run_verify(cfg, mode_text, samples, seed, json, out);
    if (hb->parsed()) return run_hilbert(cfg, json, out);
    fail(Err::ValidationError, "no subcommand selected");
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == Err::SearchExhausted ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace divalg
