#include "doctest.h"

#include <cstring>
#include <string>
#include <vector>

#include "acp/acp.h"

namespace {

const char* kPair = R"({"n": 2, "structure": "real",
  "A": [[[1, 0], [0.5, 0]], [[0.5, 0], [-1, 0]]],
  "B": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]})";

std::string text_of(acp_result r) {
  size_t needed = 0;
  CHECK(acp_result_to_json(r, nullptr, 0, &needed) == ACP_ERR_BUFFER_TOO_SMALL);
  std::string s(needed, '\0');
  CHECK(acp_result_to_json(r, s.data(), s.size(), &needed) == ACP_OK);
  s.resize(needed - 1);
  return s;
}

}  // namespace

TEST_CASE("status names and errors") {
  CHECK(std::string(acp_status_name(ACP_OK)) == "ok");
  CHECK(std::string(acp_status_name(ACP_ERR_PARSE)) == "Parse");
  acp_pair p = nullptr;
  CHECK(acp_pair_parse("{", &p) == ACP_ERR_PARSE);
  CHECK(p == nullptr);
  CHECK(std::strlen(acp_last_error()) > 0);
  CHECK(acp_pair_parse(nullptr, &p) == ACP_ERR_INVALID_ARGUMENT);
  CHECK(acp_pair_load("/nonexistent/pair.json", &p) == ACP_ERR_IO);
}

TEST_CASE("matrix functions") {
  const double pauli_x[] = {0, 0, 1, 0, 1, 0, 0, 0};
  const double pauli_z[] = {1, 0, 0, 0, 0, 0, -1, 0};
  acp_matrix x = nullptr, z = nullptr, out = nullptr;
  REQUIRE(acp_matrix_create(2, pauli_x, &x) == ACP_OK);
  REQUIRE(acp_matrix_create(2, pauli_z, &z) == ACP_OK);
  CHECK(acp_matrix_dim(x) == 2);
  double v = 0;
  CHECK(acp_operator_norm(x, &v) == ACP_OK);
  CHECK(v == doctest::Approx(1.0));
  CHECK(acp_commutator_norm(x, z, &v) == ACP_OK);
  CHECK(v == doctest::Approx(2.0));

  const double m[] = {1, 0, 2, 0, 3, 0, 4, 0};
  acp_matrix a = nullptr;
  REQUIRE(acp_matrix_create(2, m, &a) == ACP_OK);
  REQUIRE(acp_apply_reflection(a, ACP_REFLECTION_DUAL, nullptr, &out) == ACP_OK);
  double data[8];
  CHECK(acp_matrix_data(out, data, 8) == ACP_OK);
  CHECK(data[0] == 4);
  CHECK(data[2] == -2);
  CHECK(data[4] == -3);
  CHECK(data[6] == 1);
  int flag = -1;
  CHECK(acp_is_self_tau(x, ACP_REFLECTION_TRANSPOSE, nullptr, 0.0, &flag) == ACP_OK);
  CHECK(flag == 1);
  CHECK(acp_apply_reflection(a, ACP_REFLECTION_GENERALIZED, nullptr, &out) == ACP_ERR_INVALID_ARGUMENT);

  const double odd[18] = {};
  acp_matrix o = nullptr;
  REQUIRE(acp_matrix_create(3, odd, &o) == ACP_OK);
  acp_matrix o2 = nullptr;
  CHECK(acp_apply_reflection(o, ACP_REFLECTION_DUAL, nullptr, &o2) == ACP_ERR_DIMENSION_MISMATCH);
  CHECK(acp_commutator_norm(x, o, &v) == ACP_ERR_DIMENSION_MISMATCH);

  for (acp_matrix h : {x, z, a, out, o}) acp_matrix_free(h);
}

TEST_CASE("correct and verify") {
  acp_pair p = nullptr;
  REQUIRE(acp_pair_parse(kPair, &p) == ACP_OK);
  size_t n = 0;
  const char* s = nullptr;
  CHECK(acp_pair_info(p, &n, &s) == ACP_OK);
  CHECK(n == 2);
  CHECK(std::string(s) == "real");

  acp_solver_options opts;
  acp_solver_options_default(&opts);
  CHECK(opts.max_sweeps == 100);
  acp_result r = nullptr;
  REQUIRE(acp_correct(p, &opts, &r) == ACP_OK);
  acp_diagnostics d;
  CHECK(acp_result_diagnostics(r, &d) == ACP_OK);
  CHECK(d.comm_after <= 1e-10);
  CHECK(d.eps_pair == doctest::Approx(d.dist_a + d.dist_b));

  acp_report rep = nullptr;
  REQUIRE(acp_verify_json(text_of(r).c_str(), &rep) == ACP_OK);
  CHECK(acp_report_passed(rep) == 1);
  CHECK(acp_report_count(rep) > 0);
  const char* name = nullptr;
  int passed = 0;
  CHECK(acp_report_item(rep, 0, &name, nullptr, nullptr, &passed) == ACP_OK);
  CHECK(passed == 1);
  CHECK(acp_report_item(rep, 100000, &name, nullptr, nullptr, &passed) == ACP_ERR_INVALID_ARGUMENT);
  acp_report_free(rep);

  REQUIRE(acp_verify_json(kPair, &rep) == ACP_OK);
  CHECK(acp_report_passed(rep) == 0);
  acp_report_free(rep);

  opts.max_sweeps = 0;
  acp_result bad = nullptr;
  CHECK(acp_correct(p, &opts, &bad) == ACP_ERR_INVALID_ARGUMENT);

  acp_result_free(r);
  acp_pair_free(p);
}

TEST_CASE("random pairs and experiments") {
  acp_pair p = nullptr;
  REQUIRE(acp_pair_random(3, 4, "selfdual", 1e-3, &p) == ACP_OK);
  acp_result r = nullptr;
  REQUIRE(acp_correct(p, nullptr, &r) == ACP_OK);
  acp_diagnostics d;
  acp_result_diagnostics(r, &d);
  CHECK(d.eps_pair <= 1e-2);
  acp_result_free(r);
  acp_pair_free(p);
  CHECK(acp_pair_random(3, 3, "selfdual", 1e-3, &p) == ACP_ERR_INVALID_ARGUMENT);

  const char* structures[] = {"real", "complex"};
  const size_t dims[] = {2, 4};
  const double deltas[] = {1e-3};
  acp_experiment_config cfg{};
  cfg.structures = structures;
  cfg.n_structures = 2;
  cfg.dims = dims;
  cfg.n_dims = 2;
  cfg.deltas = deltas;
  cfg.n_deltas = 1;
  cfg.trials = 2;
  cfg.seed = 9;
  acp_solver_options_default(&cfg.solver);
  acp_experiment e = nullptr;
  REQUIRE(acp_experiment_run(&cfg, &e) == ACP_OK);
  CHECK(acp_experiment_record_count(e) == 8);
  CHECK(acp_experiment_failed_count(e) == 0);
  size_t needed = 0;
  acp_experiment_csv(e, nullptr, 0, &needed);
  std::vector<char> buf(needed);
  CHECK(acp_experiment_csv(e, buf.data(), buf.size(), &needed) == ACP_OK);
  CHECK(std::string(buf.data()).rfind("structure,n,delta,trial,seed,", 0) == 0);
  acp_experiment_summary(e, nullptr, 0, &needed);
  CHECK(needed > 1);
  acp_experiment_free(e);

  const char* bogus[] = {"octonion"};
  cfg.structures = bogus;
  cfg.n_structures = 1;
  CHECK(acp_experiment_run(&cfg, &e) == ACP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("demo") {
  size_t needed = 0;
  CHECK(acp_demo_text(nullptr, 0, &needed) == ACP_ERR_BUFFER_TOO_SMALL);
  CHECK(needed > 100);
}
