#include <doctest.h>

#include "drx/json_io.hpp"
#include "drx/parser.hpp"
#include "drx/rand.hpp"

using namespace drx;

TEST_CASE("field JSON round trip") {
    for (auto fq : {Fq::make(2), Fq::make(3), Fq::make(2, 2), Fq::make(3, 2), Fq::make(2, 3)}) {
        FqPtr back = fq_from_json(fq_to_json(*fq));
        CHECK(*back == *fq);
    }
    FqPtr f25 = Fq::make(5, 2, {2, 0, 1});
    CHECK(*fq_from_json(fq_to_json(*f25)) == *f25);
}

TEST_CASE("t-module JSON round trip") {
    auto f2 = Fq::make(2);
    TModule c3 = carlitz_tensor(f2, 3);
    TModule back = tmodule_from_json(tmodule_to_json(c3));
    CHECK(back == c3);

    Rng rng(433);
    DrinfeldModule e = draw_drinfeld(rng, f2, 3);
    DrinfeldModule eback = drinfeld_from_json(drinfeld_to_json(e));
    CHECK(eback.underlying() == e.underlying());
    CHECK(tmodule_from_json_any(drinfeld_to_json(e)) == e.underlying());
}

TEST_CASE("schema shape") {
    auto f3 = Fq::make(3);
    json j = tmodule_to_json(carlitz_tensor(f3, 2));
    CHECK(j.at("q").at("p") == 3);
    CHECK(j.at("q").at("m") == 1);
    CHECK(j.at("dim") == 2);
    CHECK(j.at("phi_t").is_array());
    CHECK(j.at("phi_t").size() == 2);
    CHECK(j.at("phi_t").at(0).at(0).get<std::string>() == "(T)");
}

TEST_CASE("biderivation JSON round trip") {
    auto f3 = Fq::make(3);
    Rng rng(439);
    DrinfeldModule e = draw_drinfeld(rng, f3, 2);
    SkewMatrix v(f3, 1, 1);
    v.set(0, 0, draw_skew(rng, f3, 3));
    Biderivation d(e.underlying(), carlitz(f3).underlying(), v);
    Biderivation back = biderivation_from_json(biderivation_to_json(d));
    CHECK(back == d);
}

TEST_CASE("certificates carry a recomputed check") {
    auto f2 = Fq::make(2);
    Rng rng(443);
    DrinfeldModule e = draw_drinfeld(rng, f2, 2);
    SkewMatrix v(f2, 1, 1);
    v.set(0, 0, draw_skew(rng, f2, 4));
    Biderivation d(e.underlying(), carlitz(f2).underlying(), v);
    auto red = reduce_vs_carlitz(e, d);
    json cert = certificate_to_json(d, red);
    CHECK(cert.at("check").get<bool>());
    CHECK(biderivation_from_json(cert.at("input")) == d);
    CHECK(cert.contains("reduced"));
    CHECK(cert.contains("witness"));
}

TEST_CASE("matrix JSON round trip") {
    auto f4 = Fq::make(2, 2);
    Rng rng(449);
    SkewMatrix m = draw_skew_matrix(rng, f4, 2, 3, 3);
    SkewMatrix back = skew_matrix_from_json(f4, skew_matrix_to_json(m));
    CHECK(back == m);
}
