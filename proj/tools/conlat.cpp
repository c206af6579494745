// conlat: enumerate relations, classify unary maps, build the lattice of
// congruence (or quasiorder) lattices, and run the theorem checks.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "conlat/classify.hpp"
#include "conlat/error.hpp"
#include "conlat/export.hpp"
#include "conlat/lattice.hpp"
#include "conlat/verify.hpp"

namespace {

using namespace conlat;

constexpr int exit_usage = 2;

struct UsageError : Error {
  using Error::Error;
};

std::optional<int> env_int(char const* name) {
  char const* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') {
    return std::nullopt;
  }
  try {
    std::size_t used = 0;
    int const v = std::stoi(raw, &used);
    if (used != std::string(raw).size() || v < 1) {
      throw std::invalid_argument(raw);
    }
    return v;
  } catch (std::exception const&) {
    throw UsageError(std::string(name) + " must be a positive integer, got '" + raw + "'");
  }
}

struct Caps {
  std::optional<int> eq = env_int("CONLAT_MAX_N_EQ");
  std::optional<int> quord = env_int("CONLAT_MAX_N_QUORD");
};

std::string join(std::vector<std::string> const& items, std::string const& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    out += (i ? sep : "") + items[i];
  }
  return out;
}

template <typename T>
std::string list_text(std::vector<T> const& items) {
  std::vector<std::string> parts;
  for (auto const& x : items) {
    parts.push_back(std::to_string(x));
  }
  return "{" + join(parts, ",") + "}";
}

int cmd_enumerate(int n, std::string const& kind_text, bool list) {
  Caps const caps;
  EnumerationCaps ec;
  ec.max_n_equivalence = caps.eq.value_or(ec.max_n_equivalence);
  ec.max_n_quasiorder = caps.quord.value_or(ec.max_n_quasiorder);
  auto const table = enumerate_relations(Universe(n), parse_relation_kind(kind_text), ec);
  std::cout << table->size() << "\n";
  if (list) {
    for (std::size_t i = 0; i < table->size(); ++i) {
      std::cout << table->text(i) << "\n";
    }
  }
  return 0;
}

int cmd_classify(std::string const& spec, bool one_based) {
  UnaryMap const f = parse_unary_map(spec, one_based);
  auto const p = profile(f);
  auto const tag = type_of(f);
  std::cout << "map: " << format_unary_map(f) << "\n";
  std::cout << "trivial: " << (p.is_trivial ? "yes" : "no") << "\n";
  std::cout << "permutation: " << (p.is_permutation ? "yes" : "no") << "\n";
  std::cout << "cycle lengths: " << list_text(p.cycle_lengths) << "\n";
  if (p.is_permutation) {
    std::cout << "order: " << p.order << "\n";
    if (p.prime_power) {
      std::cout << "prime power: " << p.prime_power->first << "^" << p.prime_power->second << "\n";
    }
  }
  std::cout << "acyclic: " << (p.is_acyclic ? "yes" : "no") << "\n";
  std::cout << "fixed points: " << list_text(p.fixed_points) << "\n";
  std::vector<std::string> comps;
  for (auto const& c : p.components) {
    comps.push_back(list_text(c));
  }
  std::cout << "components: " << join(comps, " ") << "\n";
  if (p.max_depth >= 0) {
    std::cout << "depths: " << list_text(p.depth) << " (max " << p.max_depth << ")\n";
  }
  std::cout << "type: " << to_string(tag.tag) << "\n";
  if (tag.tag == Type::type_i || tag.tag == Type::type_ii) {
    std::cout << "hat: " << format_unary_map(hat(f)) << "\n";
    std::vector<std::string> triples;
    for (auto const& t : essential_triples(f)) {
      triples.push_back("(" + std::to_string(t.x) + "," + std::to_string(t.z) + "," +
                        std::to_string(t.y) + ")");
    }
    std::cout << "essential triples: " << join(triples, " ") << "\n";
  }
  if (tag.tag == Type::type_iii) {
    std::cout << "prime: " << tag.prime << "\n";
  }
  if (p.is_acyclic && !p.is_trivial) {
    if (auto const w = cond_D0(f)) {
      std::vector<int> e(w->elements.begin(), w->elements.end());
      std::cout << "D0(" << w->variant << ") witness (0,1,2,0',1',2'): " << list_text(e) << "\n";
    } else {
      std::cout << "D0: none\n";
    }
  }
  std::cout << "predicted meet-irreducible: " << to_string(predicted_meet_irreducible(f)) << "\n";
  try {
    auto const r = reduction_witnesses(f);
    std::cout << "reduction (" << to_string(r.which) << "): Con(f) = Con(" << format_unary_map(r.g1)
              << ") ∩ Con(" << format_unary_map(r.g2) << ")\n";
  } catch (NotApplicable const&) {
  }
  return 0;
}

LatticeOptions lattice_options(Caps const& caps, unsigned workers) {
  LatticeOptions o;
  o.scan.workers = workers;
  o.max_n_equivalence = caps.eq.value_or(o.max_n_equivalence);
  o.max_n_quasiorder = caps.quord.value_or(o.max_n_quasiorder);
  return o;
}

int cmd_lattice(int n, std::string const& kind_text, std::string const& json_path,
                std::string const& dot_path, unsigned workers) {
  Caps const caps;
  auto const lattice =
      BigLattice::build(Universe(n), parse_relation_kind(kind_text), lattice_options(caps, workers));
  std::cout << "n: " << n << "\n";
  std::cout << "kind: " << to_string(lattice.kind()) << "\n";
  std::cout << "elements: " << lattice.size() << "\n";
  std::cout << "atoms: " << lattice.atoms().size() << "\n";
  std::cout << "coatoms: " << lattice.coatoms().size() << "\n";
  std::cout << "meet-irreducible: " << lattice.meet_irreducibles().size() << "\n";
  std::cout << "join-irreducible: " << lattice.join_irreducibles().size() << "\n";
  if (!json_path.empty()) {
    write_file(json_path, lattice_json(lattice).dump(1) + "\n");
  }
  if (!dot_path.empty()) {
    write_file(dot_path, lattice_dot(lattice));
  }
  return 0;
}

int cmd_verify(RunConfig config, std::vector<std::string> ids, std::string const& json_path) {
  Caps const caps;
  config.max_n_equivalence = caps.eq.value_or(config.max_n_equivalence);
  config.max_n_quasiorder = caps.quord.value_or(config.max_n_quasiorder);
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) {
    ids = check_ids();
  }
  Verifier verifier(config);
  std::vector<CheckResult> results;
  for (auto const& id : ids) {
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end()) {
      throw UnknownCheckId("unknown check id '" + id + "'; known: " + join(check_ids(), ","));
    }
  }
  for (auto const& id : ids) {
    results.push_back(verifier.run(id));
    auto const& r = results.back();
    std::string status(to_string(r.status));
    for (auto& c : status) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    std::cout << status << " " << r.id << " n=" << r.n;
    if (config.timings) {
      std::cout << " (" << r.seconds << " s)";
    }
    if (r.status != Status::pass) {
      std::cout << " " << r.details.dump();
    }
    std::cout << std::endl;
  }
  auto const report = report_json(config, results).dump(2) + "\n";
  if (json_path == "-") {
    std::cout << report;
  } else if (!json_path.empty()) {
    write_file(json_path, report);
  }
  return exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Congruence and quasiorder lattices of unary algebras on a finite set"};
  app.require_subcommand(1);

  int n = 3;
  std::string kind = "eq";
  bool list = false;
  auto* enumerate = app.add_subcommand("enumerate", "Count (and list) Eq(A) or Quord(A)");
  enumerate->add_option("--n", n, "Universe size")->required()->check(CLI::Range(1, 12));
  enumerate->add_option("--kind", kind, "eq or quord")->check(CLI::IsMember({"eq", "quord"}));
  enumerate->add_flag("--list", list, "Print every relation");

  std::string map_spec;
  bool one_based = false;
  auto* classify = app.add_subcommand("classify", "Classify a unary map");
  classify->add_option("--f", map_spec, "Images, comma separated, e.g. 1,0,2")->required();
  classify->add_flag("--one-based", one_based, "Read elements as 1..n");

  std::string json_path;
  std::string dot_path;
  unsigned workers = 1;
  auto* lattice = app.add_subcommand("lattice", "Build the lattice of all congruence or quasiorder lattices");
  lattice->add_option("--n", n, "Universe size")->required()->check(CLI::Range(1, 12));
  lattice->add_option("--kind", kind, "eq or quord")->check(CLI::IsMember({"eq", "quord"}));
  lattice->add_option("--json", json_path, "Write the lattice as JSON");
  lattice->add_option("--dot", dot_path, "Write the Hasse diagram as Graphviz DOT");
  lattice->add_option("--workers", workers, "Threads for map scans")->check(CLI::Range(1U, 256U));

  RunConfig config;
  std::vector<std::string> ids;
  auto* verify = app.add_subcommand("verify", "Run theorem checks and report pass/fail");
  verify->add_option("--n", config.n, "Universe size")->required()->check(CLI::Range(1, 64));
  verify->add_option("--checks", ids, "Check ids, comma separated, or 'all'")->delimiter(',');
  verify->add_option("--json", json_path, "Write the JSON report ('-' for stdout)");
  verify->add_option("--workers", config.workers, "Threads for map scans")->check(CLI::Range(1U, 256U));
  verify->add_option("--seed", config.seed, "Seed for sampled checks");
  verify->add_flag("--timings", config.timings, "Include wall time per check");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*enumerate) {
      return cmd_enumerate(n, kind, list);
    }
    if (*classify) {
      return cmd_classify(map_spec, one_based);
    }
    if (*lattice) {
      return cmd_lattice(n, kind, json_path, dot_path, workers);
    }
    if (*verify) {
      return cmd_verify(config, ids, json_path);
    }
  } catch (Error const& e) {
    std::cerr << "conlat: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
