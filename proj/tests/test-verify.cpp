#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "crystalkit/catalog.hpp"
#include "crystalkit/json_io.hpp"
#include "crystalkit/report.hpp"
#include "crystalkit/verify.hpp"

using namespace crystalkit;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_catalog_file(const fs::path& file, const FiniteInverseSemigroup& I,
                        const FiniteScale& N) {
  std::ofstream out(file);
  out << cayley_to_json(I, N).dump(2) << "\n";
}

}  // namespace

TEST_CASE("verify: the built-in catalog passes at seed 7, deterministically") {
  Report r = verify_suite({});
  CHECK(r.status == "ok");
  CHECK(r.exit_code() == 0);
  CHECK(r.payload["seed"] == 7);
  CHECK(r.payload["catalog"]["entries"] == 8);
  CHECK(r.payload["catalog"]["results"].size() == 8);
  CHECK(r.payload["hull"]["results"].size() == 3);
  CHECK(r.payload["kms"]["results"].size() == 3);
  for (const auto& row : r.payload["kms"]["results"]) {
    CHECK(row["max_residual"]["value"].get<double>() <=
          row["max_residual"]["tail_bound"].get<double>());
  }
  CHECK(r.payload["snf"]["random_decompositions"] == 60);
  CHECK(r.payload["circle"]["random_presentations"] == 40);
  CHECK(r.payload["dynam"]["results"].size() == 4);
  // Provenance covers every section.
  for (const char* key : {"catalog", "hull", "kms", "snf", "circle", "dynam"})
    CHECK(r.provenance.contains(key));

  // Same options, byte-identical report.
  Report again = verify_suite({});
  CHECK(r.to_json().dump() == again.to_json().dump());

  // A different seed samples different objects but still passes.
  VerifyOptions other;
  other.seed = 20260817;
  Report alt = verify_suite(other);
  CHECK(alt.status == "ok");
  CHECK(alt.to_json().dump() != r.to_json().dump());
}

TEST_CASE("verify: a corrupted scale is a violation naming the product") {
  fs::path dir = fresh_dir("crystalkit-verify-bad");
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  FiniteScale bad = b2.scale;
  bad.value[b2.semigroup.index_of("e21")] = 1;  // breaks N(e12)N(e21) = N(e11)
  write_catalog_file(dir / "b2.json", b2.semigroup, bad);

  VerifyOptions options;
  options.catalog_dir = dir.string();
  Report r = verify_suite(options);
  CHECK(r.status == "violation");
  CHECK(r.exit_code() == 1);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->find("b2") != std::string::npos);
  CHECK(r.witness->find("(e12,e21)") != std::string::npos);
  CHECK(r.payload["failed_section"] == "catalog");

  // Violations serialize deterministically too.
  Report again = verify_suite(options);
  CHECK(r.to_json().dump() == again.to_json().dump());
}

TEST_CASE("verify: empty or missing catalogs are input errors") {
  fs::path dir = fresh_dir("crystalkit-verify-empty");
  VerifyOptions options;
  options.catalog_dir = dir.string();
  Report r = verify_suite(options);
  CHECK(r.status == "error");
  CHECK(r.exit_code() == 2);

  VerifyOptions missing;
  missing.catalog_dir = (dir / "does-not-exist").string();
  CHECK(verify_suite(missing).status == "error");

  // Unparsable catalog files are input errors as well.
  fs::path junk_dir = fresh_dir("crystalkit-verify-junk");
  std::ofstream(junk_dir / "broken.json") << "{not json";
  VerifyOptions junk;
  junk.catalog_dir = junk_dir.string();
  CHECK(verify_suite(junk).status == "error");
}

TEST_CASE("verify: a healthy loaded catalog passes") {
  fs::path dir = fresh_dir("crystalkit-verify-ok");
  CatalogEntry b2 = catalog_entry("b2_lambda2");
  CatalogEntry chain = catalog_entry("chain2");
  write_catalog_file(dir / "b2.json", b2.semigroup, b2.scale);
  write_catalog_file(dir / "chain2.json", chain.semigroup, chain.scale);

  VerifyOptions options;
  options.catalog_dir = dir.string();
  Report r = verify_suite(options);
  CHECK(r.status == "ok");
  CHECK(r.payload["catalog"]["entries"] == 2);
  CHECK(r.payload["catalog"]["results"][0]["name"] == "b2");
  CHECK(r.payload["catalog"]["results"][1]["name"] == "chain2");
}
