#include "freetower/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "freetower/error.hpp"
#include "freetower/forking.hpp"
#include "freetower/json.hpp"
#include "freetower/morphisms.hpp"
#include "freetower/presentations.hpp"
#include "freetower/stallings.hpp"
#include "freetower/towers.hpp"
#include "freetower/whitehead.hpp"
#include "freetower/words.hpp"

namespace freetower::cli {

namespace {

// Raised for flag combinations CLI11 cannot express; mapped to exit 64.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::map<std::string, OutputFormat> kFormats = {
    {"text", OutputFormat::text}, {"json", OutputFormat::json}, {"dot", OutputFormat::dot}};

}  // namespace

ParseOutcome parse_args(std::span<const std::string> args) {
  Command cmd;
  CLI::App app{"Free-group certificates: Whitehead graphs, foldings, towers, fork witnesses", "freetower"};
  app.require_subcommand(1, 1);
  app.add_option("--output", cmd.output, "Output format")
      ->transform(CLI::CheckedTransformer(kFormats, CLI::ignore_case))
      ->option_text("text|json|dot");

  auto words_source = [&](CLI::App* sub, const std::string& flag, const std::string& help) {
    sub->add_option(flag, cmd.words, help);
    sub->add_option("--file", cmd.file, "Read words from a file, one per line")->check(CLI::ExistingFile);
    sub->fallthrough();
  };

  auto* whitehead = app.add_subcommand("whitehead", "Whitehead graph of a word set");
  words_source(whitehead, "--words", "Semicolon-separated words");
  whitehead->add_option("--rank", cmd.rank, "Ambient rank")->check(CLI::PositiveNumber);

  auto* cuts = app.add_subcommand("cut-vertices", "Cut vertices of a Whitehead graph");
  words_source(cuts, "--words", "Semicolon-separated words");
  cuts->add_option("--rank", cmd.rank, "Ambient rank")->check(CLI::PositiveNumber);

  auto* fold = app.add_subcommand("fold", "Stallings core graph and membership");
  words_source(fold, "--gens", "Semicolon-separated subgroup generators");
  fold->add_option("--rank", cmd.rank, "Ambient rank")->check(CLI::PositiveNumber);
  fold->add_option("--contains", cmd.contains, "Semicolon-separated words to test for membership");

  auto* primitive = app.add_subcommand("primitive", "Primitivity by Whitehead minimization");
  words_source(primitive, "--word,--words", "Word text");
  primitive->add_option("--rank", cmd.rank, "Ambient rank")->check(CLI::PositiveNumber);

  auto* tower = app.add_subcommand("tower", "Tower constructions for G^n");
  tower->require_subcommand(1, 1);
  tower->fallthrough();
  auto* build = tower->add_subcommand("build", "Build a presentation");
  build->require_subcommand(1, 1);
  build->fallthrough();
  auto* gn = build->add_subcommand("gn", "Four-punctured-sphere tower G^n");
  gn->add_option("--n", cmd.n, "Number of floors")->required()->check(CLI::PositiveNumber);
  gn->add_option("--emit", cmd.emit, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  gn->fallthrough();
  auto* gn_tilde = build->add_subcommand("gn-tilde", "Once-punctured-torus presentation of G^n");
  gn_tilde->add_option("--n", cmd.n, "Number of floors")->required()->check(CLI::PositiveNumber);
  gn_tilde->add_option("--emit", cmd.emit, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  gn_tilde->fallthrough();
  auto* verify = tower->add_subcommand("verify", "Verify the isomorphism chain and every floor");
  verify->add_option("--n", cmd.n, "Number of floors")->required()->check(CLI::PositiveNumber);
  verify->fallthrough();

  auto* fork = app.add_subcommand("fork-witness", "Union Whitehead graph with b_i");
  words_source(fork, "--word,--words", "Word text");
  fork->add_option("--i", cmd.index_i, "Index i (default: smallest admissible)")->check(CLI::PositiveNumber);
  fork->add_option("--dot", cmd.dot_path, "Write the union graph as DOT to this file");

  auto* weight = app.add_subcommand("weight-witness", "Generation and forking certificates");
  words_source(weight, "--word,--words", "Word text");
  weight->add_option("--count", cmd.count, "Number of indices")->required()->check(CLI::NonNegativeNumber);
  weight->add_option("--json", cmd.json_path, "Write the JSON report to this file");

  ParseOutcome out;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out.message = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = exit_code::usage;
    out.message = std::string(e.what()) + "\nRun with --help for usage.\n";
    return out;
  }

  cmd.verb = app.get_subcommands().front()->get_name();
  if (tower->parsed()) {
    if (verify->parsed()) {
      cmd.path = {"verify"};
    } else {
      cmd.path = {"build", gn->parsed() ? "gn" : "gn-tilde"};
    }
  }
  if (!cmd.words.empty() && !cmd.file.empty()) {
    out.exit_code = exit_code::usage;
    out.message = "give words either inline or with --file, not both\n";
    return out;
  }
  out.command = std::move(cmd);
  return out;
}

namespace {

std::vector<Word> read_words(const Command& cmd) {
  std::vector<Word> words;
  if (!cmd.file.empty()) {
    std::ifstream in(cmd.file);
    if (!in) throw MalformedInput("cannot read " + cmd.file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      words.push_back(parse_word(line));
    }
  } else {
    words = parse_word_list(cmd.words);
  }
  if (words.empty()) throw UsageError("no words given");
  return words;
}

Word read_single_word(const Command& cmd) {
  auto words = read_words(cmd);
  if (words.size() != 1) throw MalformedInput("expected exactly one word, got " + std::to_string(words.size()));
  return words.front();
}

int rank_for(const Command& cmd, std::span<const Word> words) {
  int needed = 1;
  for (const Word& w : words) needed = std::max(needed, w.max_index());
  if (cmd.rank) {
    if (*cmd.rank < needed) throw MalformedInput("--rank " + std::to_string(*cmd.rank) + " is below the largest index used");
    return *cmd.rank;
  }
  return needed;
}

void require_format(const Command& cmd, std::initializer_list<OutputFormat> allowed) {
  if (std::find(allowed.begin(), allowed.end(), cmd.output) == allowed.end())
    throw UsageError("output format not available for " + cmd.verb);
}

std::string letters_text(const std::vector<Letter>& ls) {
  if (ls.empty()) return "none";
  std::string out;
  for (Letter l : ls) out += (out.empty() ? "" : " ") + format(l);
  return out;
}

Json letters_json(const std::vector<Letter>& ls) {
  Json out = Json::array();
  for (Letter l : ls) out.push_back(format(l));
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw MalformedInput("cannot write " + path);
  out << content;
}

RunResult graph_command(const Command& cmd, bool cuts_only) {
  const auto words = read_words(cmd);
  const int rank = rank_for(cmd, words);
  const SeparabilityVerdict verdict = separability_obstruction(words, rank);
  const WhiteheadGraph& g = verdict.graph;
  const auto cuts = cut_vertices(g);

  RunResult r;
  if (cmd.output == OutputFormat::dot) {
    r.output = to_dot(g);
  } else if (cmd.output == OutputFormat::json) {
    Json j;
    if (!cuts_only) {
      j["graph"] = to_json(g);
      j["connected"] = g.connected();
      j["all_vertices_incident"] = g.all_vertices_incident();
    }
    j["cut_vertices"] = letters_json(cuts);
    if (!cuts_only) {
      j["separability"] = {{"status", to_string(verdict.status)}, {"blocker", to_string(verdict.blocker)}};
    }
    r.output = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    if (!cuts_only) {
      out << "rank: " << rank << "\n";
      out << "edges: " << g.edges().size() << " (total multiplicity " << g.total_multiplicity() << ")\n";
      for (const auto& [e, m] : g.edges()) out << "  " << format(e.first) << " -- " << format(e.second) << "  [" << m << "]\n";
      out << "connected: " << yes_no(g.connected()) << "\n";
      out << "all vertices incident: " << yes_no(g.all_vertices_incident()) << "\n";
    }
    out << "cut vertices: " << letters_text(cuts) << "\n";
    if (!cuts_only) {
      out << "separability: " << to_string(verdict.status);
      if (verdict.blocker != SeparabilityBlocker::none) out << " (" << to_string(verdict.blocker) << ")";
      out << "\n";
    }
    r.output = out.str();
  }
  return r;
}

RunResult fold_command(const Command& cmd) {
  const auto gens = read_words(cmd);
  std::vector<Word> queries = cmd.contains.empty() ? std::vector<Word>{} : parse_word_list(cmd.contains);
  std::vector<Word> all = gens;
  all.insert(all.end(), queries.begin(), queries.end());
  const int rank = rank_for(cmd, all);
  const CoreGraph core = core_graph(gens, rank);

  RunResult r;
  if (cmd.output == OutputFormat::dot) {
    r.output = to_dot(core);
    return r;
  }
  if (cmd.output == OutputFormat::json) {
    Json j;
    j["rank"] = rank;
    j["vertex_count"] = core.vertex_count();
    Json arcs = Json::array();
    for (const Arc& a : core.arcs()) arcs.push_back({{"from", a.from}, {"to", a.to}, {"label", format(Word::generator(a.label))}});
    j["arcs"] = std::move(arcs);
    j["subgroup_rank"] = subgroup_rank(core);
    j["generates_ambient"] = generates_ambient(gens, rank);
    Json members = Json::array();
    for (const Word& q : queries) members.push_back({{"word", format(q)}, {"member", contains(core, q)}});
    j["membership"] = std::move(members);
    r.output = j.dump(2) + "\n";
    return r;
  }
  std::ostringstream out;
  out << "core graph: " << core.vertex_count() << " vertices, " << core.arcs().size() << " arcs\n";
  for (const Arc& a : core.arcs()) out << "  " << a.from << " -x" << a.label << "-> " << a.to << "\n";
  out << "subgroup rank: " << subgroup_rank(core) << "\n";
  out << "generates F_" << rank << ": " << yes_no(generates_ambient(gens, rank)) << "\n";
  for (const Word& q : queries) out << "contains " << format(q) << ": " << (contains(core, q) ? "true" : "false") << "\n";
  r.output = out.str();
  return r;
}

RunResult primitive_command(const Command& cmd) {
  require_format(cmd, {OutputFormat::text, OutputFormat::json});
  const auto words = read_words(cmd);
  const int rank = rank_for(cmd, words);
  Json items = Json::array();
  std::ostringstream out;
  for (const Word& w : words) {
    if (w.empty()) throw MalformedInput("primitivity is undefined for the empty word");
    const Minimization m = whitehead_minimize(cyclic_reduce(w).cyclic(), rank);
    const bool prim = m.minimal.size() == 1;
    items.push_back({{"word", format(w)},
                     {"rank", rank},
                     {"primitive", prim},
                     {"minimal", format(m.minimal)},
                     {"moves", m.transcript.size()}});
    out << format(w) << ": " << (prim ? "primitive" : "not primitive") << " (minimal cyclic form " << format(m.minimal)
        << ", " << m.transcript.size() << " moves)\n";
  }
  RunResult r;
  r.output = cmd.output == OutputFormat::json ? (words.size() == 1 ? items[0] : items).dump(2) + "\n" : out.str();
  return r;
}

std::string tower_dot(const TowerSpec& tower) {
  std::ostringstream out;
  out << "digraph tower {\n  rankdir=BT;\n";
  const std::size_t floors = tower.floors.size();
  for (std::size_t k = 0; k <= floors; ++k) {
    const Presentation& p = k < floors ? tower.floors[k].upper : tower.ground;
    out << "  G" << k << " [label=\"G" << k << ": " << p.rank() << " generators, " << p.relators().size()
        << " relators\"];\n";
  }
  for (std::size_t k = 0; k < floors; ++k) {
    const FloorSpec& f = tower.floors[k];
    std::string fresh;
    for (const auto& n : f.surface_generators) fresh += " " + n;
    for (const auto& n : f.bass_serre_generators) fresh += " " + n;
    out << "  G" << k << " -> G" << k + 1 << " [label=\"" << describe(f.surface) << ";" << fresh << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

Json named_presentation_json(const Presentation& p) {
  Json j = to_json(p);
  j["named_relators"] = p.named_relators();
  return j;
}

std::string presentation_text(const Presentation& p) {
  std::ostringstream out;
  out << "generators (" << p.rank() << "):";
  for (const auto& g : p.generators()) out << " " << g;
  out << "\nrelators (" << p.relators().size() << "):\n";
  for (const auto& r : p.named_relators()) out << "  " << r << "\n";
  return out.str();
}

OutputFormat emitted_format(const Command& cmd) {
  if (cmd.emit == "json") return OutputFormat::json;
  if (cmd.emit == "dot") return OutputFormat::dot;
  return cmd.output;
}

RunResult tower_command(const Command& cmd) {
  RunResult r;
  if (cmd.path.front() == "verify") {
    require_format(cmd, {OutputFormat::text, OutputFormat::json});
    bool ok = true;
    Json j;
    std::ostringstream out;

    const GnBuild gn = build_gn(cmd.n);
    Json gn_floors = Json::array();
    for (std::size_t k = 0; k < gn.tower.floors.size(); ++k) {
      const FloorReport rep = validate_floor(gn.tower.floors[k], true);
      ok = ok && rep.passed();
      Json conds = Json::object();
      out << "G^n floor " << k << ":";
      for (const auto& c : rep.conditions) {
        conds[c.name] = to_string(c.state);
        out << " " << c.name << "=" << to_string(c.state);
      }
      out << "\n";
      gn_floors.push_back(std::move(conds));
    }
    j["gn_floors"] = std::move(gn_floors);

    const GnTildeBuild tilde = build_gn_tilde(cmd.n);
    Json chain = Json::array();
    for (std::size_t i = 0; i < tilde.chain.size(); ++i) {
      const IsoStep& step = tilde.chain[i];
      const IsoReport rep = verify_isomorphism(step.forward, step.backward, step.source, step.target);
      ok = ok && rep.status == IsoStatus::verified;
      chain.push_back(to_string(rep.status));
      out << "chain step " << i << " -> " << i + 1 << ": " << to_string(rep.status) << "\n";
    }
    j["chain"] = std::move(chain);

    bool composite_ok = true;
    for (const auto& m : map_relator_check(chain_composite(tilde), tilde.stages.front(), tilde.presentation))
      composite_ok = composite_ok && m.outcome == RelatorOutcome::matched;
    ok = ok && composite_ok;
    j["composite_matches_all_relators"] = composite_ok;
    out << "composite map matches every relator: " << yes_no(composite_ok) << "\n";

    Json support = Json::array();
    for (int jdx = 1; jdx <= cmd.n; ++jdx) {
      const bool holds = support_condition_holds(tilde, jdx);
      ok = ok && holds;
      support.push_back(holds);
      out << "support condition j=" << jdx << ": " << yes_no(holds) << "\n";
    }
    j["support_conditions"] = std::move(support);

    Json torus_floors = Json::array();
    for (std::size_t k = 0; k < tilde.tower.floors.size(); ++k) {
      const FloorReport rep = validate_floor(tilde.tower.floors[k], true);
      ok = ok && rep.passed();
      torus_floors.push_back(rep.passed());
      out << "torus floor " << k << ": " << (rep.passed() ? "PASS" : "FAIL") << "\n";
    }
    j["torus_floors"] = std::move(torus_floors);

    const bool same = equivalent_listing(tilde.tower.floors.front().upper, tilde.presentation) && consistent(tilde.tower) &&
                      consistent(gn.tower);
    ok = ok && same;
    j["towers_consistent"] = same;
    out << "towers consistent: " << yes_no(same) << "\n";
    j["verified"] = ok;
    out << (ok ? "VERIFIED" : "INCONCLUSIVE") << "\n";

    r.exit_code = ok ? exit_code::ok : exit_code::inconclusive;
    r.output = cmd.output == OutputFormat::json ? j.dump(2) + "\n" : out.str();
    return r;
  }

  const OutputFormat fmt = emitted_format(cmd);
  if (cmd.path[1] == "gn") {
    const GnBuild gn = build_gn(cmd.n);
    if (fmt == OutputFormat::dot) {
      r.output = tower_dot(gn.tower);
    } else if (fmt == OutputFormat::json) {
      r.output = named_presentation_json(gn.presentation).dump(2) + "\n";
    } else {
      r.output = presentation_text(gn.presentation);
    }
    return r;
  }

  const GnTildeBuild tilde = build_gn_tilde(cmd.n);
  if (fmt == OutputFormat::dot) {
    r.output = tower_dot(tilde.tower);
  } else if (fmt == OutputFormat::json) {
    Json j = named_presentation_json(tilde.presentation);
    Json wp = Json::array();
    for (const Word& w : tilde.w_prime) wp.push_back(format_named(w, tilde.presentation.generators()));
    j["w_prime"] = std::move(wp);
    Json chain = Json::array();
    for (const IsoStep& s : tilde.chain) chain.push_back({{"forward", to_json(s.forward)}, {"backward", to_json(s.backward)}});
    j["chain"] = std::move(chain);
    r.output = j.dump(2) + "\n";
  } else {
    std::ostringstream out;
    out << presentation_text(tilde.presentation);
    for (std::size_t k = 0; k < tilde.w_prime.size(); ++k)
      out << "w'" << k + 1 << " = " << format_named(tilde.w_prime[k], tilde.presentation.generators()) << "\n";
    r.output = out.str();
  }
  return r;
}

std::string fork_text(const ForkReport& rep) {
  std::ostringstream out;
  out << "word: " << format(rep.input_word) << "\n";
  if (rep.verdict == ForkVerdict::special_case_power) {
    out << "cyclic core: " << format(rep.normalization.core) << "\n";
  } else {
    out << "normalized: " << format(rep.normalization.normalized) << " (core " << format(rep.normalization.core) << ")\n";
    out << "i: " << rep.index_i << ", ambient rank " << rep.ambient_rank << ", b_i = " << format(b_word(rep.index_i))
        << "\n";
    out << "edges: " << rep.graph.edges().size() << ", connected: " << yes_no(rep.connected)
        << ", all vertices incident: " << yes_no(rep.all_vertices_incident) << "\n";
    out << "cut vertices: " << letters_text(rep.cut_vertices) << "\n";
  }
  out << "verdict: " << to_string(rep.verdict) << "\n";
  out << "note: " << rep.note << "\n";
  return out.str();
}

RunResult fork_command(const Command& cmd) {
  const Word a = read_single_word(cmd);
  if (a.empty()) throw MalformedInput("the trivial word has no fork witness");
  const int i = cmd.index_i.value_or(minimal_fork_index(a));
  const ForkReport rep = fork_witness(a, i);
  if (!cmd.dot_path.empty()) write_file(cmd.dot_path, to_dot(rep.graph));
  RunResult r;
  r.exit_code = rep.verdict == ForkVerdict::inconclusive ? exit_code::inconclusive : exit_code::ok;
  switch (cmd.output) {
    case OutputFormat::json: r.output = to_json(rep).dump(2) + "\n"; break;
    case OutputFormat::dot: r.output = to_dot(rep.graph); break;
    case OutputFormat::text: r.output = fork_text(rep); break;
  }
  return r;
}

RunResult weight_command(const Command& cmd) {
  require_format(cmd, {OutputFormat::text, OutputFormat::json});
  const Word a = read_single_word(cmd);
  const WeightReport rep = weight_witness(a, cmd.count);
  const std::string json = to_json(rep).dump(2) + "\n";
  if (!cmd.json_path.empty()) write_file(cmd.json_path, json);
  RunResult r;
  r.exit_code = rep.complete() ? exit_code::ok : exit_code::inconclusive;
  if (cmd.output == OutputFormat::json) {
    r.output = json;
    return r;
  }
  std::ostringstream out;
  out << "word: " << format(a) << "\n";
  if (rep.special_case_power) {
    out << "SPECIAL_CASE_POWER\n";
  } else {
    for (std::size_t k = 0; k < rep.forks.size(); ++k) {
      out << "rank " << rep.generation[k].rank << ": generation " << (rep.generation[k].generates ? "yes" : "no")
          << ", fork " << to_string(rep.forks[k].verdict) << "\n";
    }
  }
  out << "complete: " << yes_no(rep.complete()) << "\n";
  out << "note: " << rep.note << "\n";
  r.output = out.str();
  return r;
}

}  // namespace

RunResult run(const Command& cmd) {
  try {
    if (cmd.verb == "whitehead") return graph_command(cmd, false);
    if (cmd.verb == "cut-vertices") return graph_command(cmd, true);
    if (cmd.verb == "fold") return fold_command(cmd);
    if (cmd.verb == "primitive") return primitive_command(cmd);
    if (cmd.verb == "tower") return tower_command(cmd);
    if (cmd.verb == "fork-witness") return fork_command(cmd);
    if (cmd.verb == "weight-witness") return weight_command(cmd);
    throw UsageError("unknown verb '" + cmd.verb + "'");
  } catch (const UsageError& e) {
    return {exit_code::usage, "", std::string("usage error: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {  // MalformedInput, InvalidFloor
    return {exit_code::malformed, "", std::string("error: ") + e.what() + "\n"};
  }
}

RunResult run_main(std::span<const std::string> args) {
  ParseOutcome parsed = parse_args(args);
  if (!parsed.command) {
    RunResult r;
    r.exit_code = parsed.exit_code;
    (parsed.exit_code == exit_code::ok ? r.output : r.error) = parsed.message;
    return r;
  }
  return run(*parsed.command);
}

}  // namespace freetower::cli
