// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "facto/json_io.hpp"
#include "facto/random.hpp"

using namespace facto;
using io::json;

namespace {

const Field F5 = Field::prime(5);
const Field Q = Field::rational();

std::string parse_error(const json& j, Field f) {
    try {
        io::parse_factorization(j, f);
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(Json, Fields) {
    EXPECT_TRUE(io::parse_field("q").is_rational());
    EXPECT_EQ(io::parse_field("fp:7"), Field::prime(7));
    for (const char* s : {"", "fp:", "fp:6", "fp:x", "r", "fp:1"}) EXPECT_THROW(io::parse_field(s), Error) << s;
}

TEST(Json, Scalars) {
    EXPECT_EQ(io::parse_scalar(json("-3/6"), Q, "s"), Scalar(Q, mpq_class(-1, 2)));
    EXPECT_EQ(io::parse_scalar(json(7), F5, "s"), Scalar(F5, 2L));
    EXPECT_EQ(io::scalar_json(Scalar(Q, mpq_class(2, 3))), json("2/3"));
    EXPECT_EQ(io::scalar_json(Scalar(Q, 4L)), json(4));
    EXPECT_THROW(io::parse_scalar(json("1/0"), Q, "s"), Error);
    EXPECT_THROW(io::parse_scalar(json(1.5), Q, "s"), Error);
}

TEST(Json, FactorizationRoundTrip) {
    gen::Rng rng(71);
    for (int it = 0; it < 40; ++it) {
        Field f = it % 3 ? F5 : Q;
        Factorization x = gen::random_factorization(rng, f, 2 + it % 3, 1 + it % 3);
        if (it % 4 == 0) x = rotate(x);
        json j = io::factorization_json(x, it % 2);
        EXPECT_EQ(io::parse_factorization(json::parse(j.dump()), f), x);
    }
}

TEST(Json, ChainRoundTrip) {
    gen::Rng rng(72);
    for (int it = 0; it < 40; ++it) {
        Field f = it % 3 ? F5 : Q;
        MonoChain u = gen::random_chain(rng, f, 2 + it % 2, 1 + it % 3);
        MonoChain v = io::parse_chain(json::parse(io::chain_json(u).dump()), f);
        EXPECT_EQ(io::chain_json(v), io::chain_json(u));
    }
}

TEST(Json, OutputIsDeterministic) {
    gen::Rng a(9), b(9);
    EXPECT_EQ(io::factorization_json(gen::random_factorization(a, F5, 3, 2), true).dump(),
              io::factorization_json(gen::random_factorization(b, F5, 3, 2), true).dump());
}

TEST(Json, Rejections) {
    json good = json::parse(R"({"d":2,"l":1,"m":1,"degs":[[-1],[0]],"maps":[{"rows":1,"cols":1,"entries":[[[0,1]]]}]})");
    EXPECT_EQ(parse_error(good, Q), "");
    json j = good;
    j["maps"][0]["entries"][0][0] = json::array();
    EXPECT_NE(parse_error(j, Q).find("NonMonic"), std::string::npos);
    j = good;
    j["maps"][0]["entries"][0][0] = {0, 0, 1};
    EXPECT_NE(parse_error(j, Q).find("GradingViolation"), std::string::npos);
    j = good;
    j["maps"][0]["entries"][0][0] = {0, "x"};
    EXPECT_NE(parse_error(j, Q).find("factorization.maps[0].entries[0][0]"), std::string::npos);
    j = good;
    j.erase("degs");
    EXPECT_NE(parse_error(j, Q).find("degs"), std::string::npos);
    j = good;
    j["l"] = 2;
    EXPECT_NE(parse_error(j, Q).find("factorization.degs"), std::string::npos);
    j = good;
    j["m"] = 2;
    EXPECT_NE(parse_error(j, Q), "");
    json chain = json::parse(
        R"({"objects":[{"d":2,"summands":[[2,1]]},{"d":2,"summands":[[2,0]]}],
            "maps":[{"src":{"d":2,"summands":[[2,1]]},"tgt":{"d":2,"summands":[[2,0]]},"blocks":[[1]]}]})");
    EXPECT_THROW(io::parse_chain(chain, F5), Error);
    chain["objects"][0]["summands"][0] = {3, 1};
    EXPECT_THROW(io::parse_chain(chain, F5), Error);
}
