#include <doctest.h>

#include <algorithm>

#include "conlat/error.hpp"
#include "conlat/export.hpp"
#include "conlat/verify.hpp"

using namespace conlat;

TEST_CASE("lattice JSON dump") {
  auto const e3 = BigLattice::build(Universe(3), RelationKind::equivalence);
  auto const j = lattice_json(e3);
  CHECK(j["n"] == 3);
  CHECK(j["kind"] == "eq");
  REQUIRE(j["elements"].size() == 8);
  CHECK(j["elements"][0]["id"] == 0);
  CHECK(j["elements"][0]["relations"] == nlohmann::json::array({"[0,1,2]", "Δ"}));
  CHECK(j["elements"][7]["relations"].size() == 5);
  CHECK(j["covers"].size() == 12);
  CHECK(j["covers"][0] == nlohmann::json::array({0, 1}));
  CHECK(j["atoms"] == nlohmann::json::array({1, 2, 3}));
  CHECK(j["coatoms"] == nlohmann::json::array({4, 5, 6}));
  CHECK(j["meet_irreducible"] == j["coatoms"]);
  // Round-trips through text.
  CHECK(nlohmann::json::parse(j.dump()) == j);
}

TEST_CASE("lattice DOT dump") {
  auto const e3 = BigLattice::build(Universe(3), RelationKind::equivalence);
  auto const dot = lattice_dot(e3);
  CHECK(dot.starts_with("digraph lattice {"));
  CHECK(std::count(dot.begin(), dot.end(), '\n') == 3 + 8 + 12 + 1);
  CHECK(dot.find("e0 [label=\"2\\n[0,1,2] Δ\"];") != std::string::npos);
  CHECK(dot.find("e6 -> e7;") != std::string::npos);
  // Elements with more than six members show the cardinality only.
  auto const e4 = BigLattice::build(Universe(4), RelationKind::equivalence);
  auto const big = lattice_dot(e4);
  CHECK(big.find("e" + std::to_string(e4.top()) + " [label=\"15\"];") != std::string::npos);
}

TEST_CASE("write_file reports unwritable paths") {
  CHECK_THROWS_AS(write_file("/nonexistent-dir/x.json", "{}"), IoError);
}

TEST_CASE("registry") {
  auto const& ids = check_ids();
  CHECK(ids.size() == 15);
  CHECK(ids.front() == "atoms");
  CHECK(std::find(ids.begin(), ids.end(), "boolean-n3") != ids.end());
  Verifier v(RunConfig{});
  CHECK_THROWS_AS(v.run("no-such-check"), UnknownCheckId);
  CHECK_THROWS_AS(v.run(std::vector<std::string>{"atoms", "nope"}), UnknownCheckId);
}

TEST_CASE("skips are explicit") {
  RunConfig small;
  small.n = 2;
  Verifier v2(small);
  auto const r = v2.run("atoms");
  CHECK(r.status == Status::skipped);
  CHECK(r.details.contains("reason"));

  RunConfig four;
  four.n = 4;
  Verifier v4(four);
  CHECK(v4.run("boolean-n3").status == Status::skipped);

  RunConfig big;
  big.n = 8;
  Verifier v8(big);
  auto const r8 = v8.run("tolerance-simple");
  CHECK(r8.status == Status::skipped);
  CHECK(r8.details["claim"] == "proof-backed, unverified");

  RunConfig capped;
  capped.n = 4;
  capped.max_n_quasiorder = 3;
  Verifier vc(capped);
  CHECK(vc.run("residual-phi").status == Status::skipped);
}

TEST_CASE("n=3 run passes and its report is stable") {
  RunConfig cfg;
  cfg.n = 3;
  Verifier v(cfg);
  auto const results = v.run(check_ids());
  for (auto const& r : results) {
    INFO(r.id);
    CHECK(r.status == Status::pass);
  }
  CHECK(exit_code(results) == 0);
  auto const report = report_json(cfg, results);
  CHECK(report["schema"] == 1);
  CHECK(report["summary"]["pass"] == 15);
  CHECK_FALSE(report["checks"][0].contains("seconds"));

  cfg.workers = 3;
  Verifier again(cfg);
  CHECK(report_json(cfg, again.run(check_ids())).dump() == report.dump());

  cfg.timings = true;
  CHECK(report_json(cfg, results)["checks"][0].contains("seconds"));
}

TEST_CASE("failures carry replayable counterexamples") {
  RunConfig cfg;
  cfg.n = 4;
  Verifier v(cfg);
  auto const r = v.run("atom-join");
  REQUIRE(r.status == Status::fail);
  CHECK(exit_code({r}) == 1);
  CHECK(r.details["k"] == 4);
  CHECK(r.details["triples_checked"] == 286);
  // Replay: the listed equivalences generate Eq(A) under Galois closure.
  auto const t = enumerate_relations(Universe(4), RelationKind::equivalence);
  BitSet m = RelationSet::bounds(t).mask();
  for (auto const& text : r.details["witness_kappas"]) {
    m.set(t->index_of(parse_partition(text.get<std::string>(), 4)));
  }
  CHECK(con_closure(RelationSet(t, m)) == RelationSet::all(t));
}
