#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qfix/corpus.hpp"
#include "qfix/error.hpp"
#include "qfix/parse.hpp"
#include "support.hpp"

using namespace qfix;
using namespace testing_support;

TEST_CASE("corpus entries match the data directory") {
    const auto names = corpus_names();
    CHECK(names.size() == 8);
    for (const auto& n : names) {
        CAPTURE(n);
        std::ifstream in(std::string(QFIX_DATA_DIR) + "/" + n + ".sub");
        REQUIRE(in.good());
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == corpus_entry(n).text);
        CHECK(corpus_entry(n).phi.images() == parse_substitution(ss.str()).substitution.images());
    }
    CHECK_THROWS_AS(corpus_entry("nope"), Error);
}

TEST_CASE("club substitution") {
    const auto ex = club_example();
    const auto& th = ex.theta;
    const auto& A = th.alphabet();
    const Letter c = A.at("c");
    REQUIRE(th.constant_length() == std::size_t{5});
    const Word tc = th.image(c);
    CHECK(tc[0] == c);
    CHECK(tc[1] == c);
    CHECK(tc[4] == c);
    CHECK(th.image(tc[2]).size() == 5);
    // theta restricted to the block letters is the 2-block substitution.
    const auto bp = block_substitution(ex.base, 2);
    CHECK(bp.blocks.size() + ex.base.alphabet().size() + 1 == A.size());
    CHECK(ex.tau.apply(Word{c}) == Word{ex.tau.target().at("c")});
    CHECK(verify(th, ex.x_shifted, 500));
    CHECK(verify(th, ex.x_lifted, 500));
}

TEST_CASE("paper examples") {
    const auto all = run_paper_examples();
    CHECK(all.size() == paper_example_names().size());
    for (const auto& r : all) {
        CAPTURE(r.name);
        for (const auto& ch : r.checks) {
            CAPTURE(ch.anchor);
            CAPTURE(ch.detail);
            CHECK(ch.ok);
        }
        CHECK(r.ok());
    }
    const auto one = run_paper_examples(std::string("club"));
    REQUIRE(one.size() == 1);
    CHECK(one[0].name == "club");
    CHECK_THROWS_AS(run_paper_examples(std::string("missing")), Error);
}
