#include <string>

#include "doctest.h"
#include "divis.h"

namespace {
std::string take(char* p) {
    std::string s = p ? p : "";
    divis_free(p);
    return s;
}
}  // namespace

TEST_CASE("expand") {
    char* json = nullptr;
    CHECK(divis_expand(2, 2, 9, &json) == DIVIS_NEGATIVE);
    CHECK(take(json) == "{\"n\":9,\"q\":2,\"r\":2,\"digits\":[1,1],\"leading\":-1,\"feasible\":false}");
    CHECK(divis_expand(2, 2, 16, &json) == DIVIS_OK);
    CHECK(take(json) == "{\"n\":16,\"q\":2,\"r\":2,\"digits\":[0,0],\"leading\":4,\"feasible\":true}");
    CHECK(divis_expand(1, 2, 9, &json) == DIVIS_EINVAL);
}

TEST_CASE("feasible") {
    int f = -1;
    CHECK(divis_feasible(2, 3, 33, &f) == DIVIS_NEGATIVE);
    CHECK(f == 0);
    CHECK(divis_feasible(2, 3, 34, &f) == DIVIS_OK);
    CHECK(f == 1);
}

TEST_CASE("gamma lookup with witness, checked via the matrix checker") {
    long long value = 0;
    char* witness = nullptr;
    CHECK(divis_gamma_lookup(2, 8, 37, &value, &witness) == DIVIS_OK);
    CHECK(value == 8);
    std::string wtext = take(witness);
    REQUIRE(!wtext.empty());
    char* report = nullptr;
    CHECK(divis_check_matrix(wtext.c_str(), 8, &report) == DIVIS_OK);
    std::string rep = take(report);
    CHECK(rep.find("\"divisible\":true") != std::string::npos);
    CHECK(rep.find("\"gamma1\":8") != std::string::npos);

    CHECK(divis_gamma_lookup(2, 4, 9, &value, nullptr) == DIVIS_NEGATIVE);
}

TEST_CASE("census handle") {
    divis_census_t* eng = divis_census_create("", 1);
    REQUIRE(eng != nullptr);
    char* counts = nullptr;
    char* reps = nullptr;
    CHECK(divis_census_enumerate(eng, 2, 2, 6, 3, 0, 0, 0, &counts, &reps) == DIVIS_OK);
    CHECK(take(counts) == "n,k,count\n6,3,3\n");
    CHECK(!take(reps).empty());

    char* json = nullptr;
    char* witness = nullptr;
    CHECK(divis_census_gamma(eng, 2, 4, 11, 0, 0, 0, &json, &witness) == DIVIS_OK);
    std::string j = take(json);
    CHECK(j.find("\"gamma\":4") != std::string::npos);
    CHECK(!take(witness).empty());

    char* verdict = nullptr;
    CHECK(divis_verify_claim(eng, "2div-n5", 0, 0, &verdict) == DIVIS_OK);
    CHECK(take(verdict) == "pass");

    char* ids = nullptr;
    CHECK(divis_claim_list(&ids) == DIVIS_OK);
    CHECK(take(ids).find("4div-n17-line123-unique") != std::string::npos);

    char* csv = nullptr;
    CHECK(divis_tables(eng, "ternary", 7, 0, 0, &csv) == DIVIS_OK);
    std::string c = take(csv);
    CHECK(c.find("7,3,1") != std::string::npos);

    CHECK(divis_stats(eng, 2, 4, 10, 0, 0, &csv) == DIVIS_OK);
    CHECK(take(csv).find("n,k,delta,gamma1") != std::string::npos);

    CHECK(divis_tables(eng, "nonsense", 7, 0, 0, &csv) == DIVIS_EINVAL);
    divis_census_destroy(eng);
}
