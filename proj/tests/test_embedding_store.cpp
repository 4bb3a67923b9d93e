#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace nounclass;
using testing_support::oracle_nearest;

namespace {

const char* three_records =
    "{\"dim\":4,\"lang\":\"sw\",\"count\":3}\n"
    "{\"word\":\"watu\",\"vector\":[1,0,0,0],\"label\":2}\n"
    "{\"word\":\"Maji\",\"vector\":[0,1,0,0],\"label\":6}\n"
    "{\"word\":\"kitabu\",\"vector\":[0,0,1,0.5]}\n";

}

TEST(LoadEmbeddings, ThreeValidRecords) {
    auto dump = parse_embeddings(three_records, "mem");
    EXPECT_EQ(dump.dim, 4u);
    EXPECT_EQ(dump.lang, "sw");
    ASSERT_EQ(dump.records.size(), 3u);
    EXPECT_EQ(dump.records[1].word, "maji");
    EXPECT_EQ(dump.records[0].label, NounClass(2));
    EXPECT_FALSE(dump.records[2].label.has_value());
    EXPECT_EQ(dump.diagnostics.warning_count(), 0u);
}

TEST(LoadEmbeddings, DimensionMismatchRejectsFile) {
    const char* text =
        "{\"dim\":4,\"lang\":\"sw\"}\n"
        "{\"word\":\"watu\",\"vector\":[1,0,0,0]}\n"
        "{\"word\":\"maji\",\"vector\":[1,0,0]}\n";
    try {
        parse_embeddings(text, "mem");
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("dimension mismatch"), std::string::npos);
    }
}

TEST(LoadEmbeddings, DuplicateKeepsFirstAndWarns) {
    const char* text =
        "{\"dim\":2,\"lang\":\"sw\"}\n"
        "{\"word\":\"watu\",\"vector\":[1,0]}\n"
        "{\"word\":\"watu\",\"vector\":[0,1]}\n";
    auto dump = parse_embeddings(text, "mem");
    ASSERT_EQ(dump.records.size(), 1u);
    EXPECT_EQ(dump.records[0].vector, (std::vector<double>{1, 0}));
    EXPECT_EQ(dump.diagnostics.duplicates, 1u);
}

TEST(LoadEmbeddings, NonFiniteRejectsRecordOnly) {
    const char* text =
        "{\"dim\":2,\"lang\":\"sw\"}\n"
        "{\"word\":\"a1\",\"vector\":[null,0]}\n"
        "{\"word\":\"a2\",\"vector\":[1e400,0]}\n"
        "{\"word\":\"a3\",\"vector\":[1,2]}\n";
    auto dump = parse_embeddings(text, "mem");
    ASSERT_EQ(dump.records.size(), 1u);
    EXPECT_EQ(dump.records[0].word, "a3");
    EXPECT_EQ(dump.diagnostics.non_finite, 2u);
}

TEST(LoadEmbeddings, CountMismatchIsWarning) {
    const char* text =
        "{\"dim\":2,\"lang\":\"sw\",\"count\":5}\n"
        "{\"word\":\"a\",\"vector\":[1,2]}\n";
    auto dump = parse_embeddings(text, "mem");
    EXPECT_EQ(dump.records.size(), 1u);
    EXPECT_TRUE(dump.diagnostics.count_mismatch);
}

TEST(LoadEmbeddings, LabelOutsideUniverseRejected) {
    const char* text =
        "{\"dim\":1,\"lang\":\"sw\"}\n"
        "{\"word\":\"a\",\"vector\":[1],\"label\":99}\n";
    EXPECT_THROW(parse_embeddings(text, "mem"), ValidationError);
}

TEST(LoadEmbeddings, RenderRoundTripAndDeterminism) {
    auto dump = parse_embeddings(three_records, "mem");
    const auto text = render_embeddings(dump);
    auto again = parse_embeddings(text, "mem2");
    ASSERT_EQ(again.records.size(), dump.records.size());
    for (std::size_t i = 0; i < dump.records.size(); ++i) {
        EXPECT_EQ(again.records[i].word, dump.records[i].word);
        EXPECT_EQ(again.records[i].vector, dump.records[i].vector);
        EXPECT_EQ(again.records[i].label, dump.records[i].label);
    }
    EXPECT_EQ(render_embeddings(again), text);
}

TEST(Paradigms, ParseAndValidate) {
    auto set = parse_paradigms("{\"lang\":\"sw\"}\n{\"word\":\"Watu\",\"class\":2}\n{\"word\":\"maji\",\"class\":6}\n", "p");
    ASSERT_EQ(set.entries.size(), 2u);
    EXPECT_EQ(set.entries[0].first, "watu");
    EXPECT_EQ(set.class_set(), (std::set<NounClass>{NounClass(2), NounClass(6)}));
    EXPECT_THROW(parse_paradigms("{\"lang\":\"sw\"}\n{\"word\":\"a\",\"class\":2}\n{\"word\":\"A\",\"class\":6}\n", "p"),
                 ValidationError);
    EXPECT_THROW(parse_paradigms("{\"lang\":\"sw\"}\n", "p"), ValidationError);
}

TEST(Cosine, WorkedExamples) {
    EXPECT_DOUBLE_EQ(cosine(std::vector<double>{1, 0}, std::vector<double>{1, 0}), 1.0);
    EXPECT_DOUBLE_EQ(cosine(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
    EXPECT_NEAR(cosine(std::vector<double>{1, 1}, std::vector<double>{1, 0}), 1.0 / std::sqrt(2.0), 1e-6);
    EXPECT_NEAR(cosine(std::vector<double>{1, 1}, std::vector<double>{1, 0}), 0.7071, 1e-4);
}

TEST(Cosine, ZeroVectorIsDegenerate) {
    try {
        cosine(std::vector<double>{0, 0}, std::vector<double>{1, 0});
        FAIL() << "expected ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_STREQ(e.what(), "degenerate vector");
    }
}

TEST(Cosine, SelfSimilarityAndSymmetry) {
    Rng rng(11);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> a(16), b(16);
        for (auto& x : a) x = rng.normal() * 100;
        for (auto& x : b) x = rng.normal() * 1e-3;
        EXPECT_NEAR(cosine(a, a), 1.0, 1e-9);
        EXPECT_LT(std::abs(cosine(a, b) - cosine(b, a)), 1e-12);
        const double c = cosine(a, b);
        EXPECT_GE(c, -1.0);
        EXPECT_LE(c, 1.0);
    }
}

TEST(Nearest, IdentityQueryFindsItself) {
    auto index_records = testing_support::random_index(50, 8, 5);
    EmbeddingIndex index(index_records);
    auto r = index.nearest(index_records[17].vector, 1);
    ASSERT_EQ(r.neighbors.size(), 1u);
    EXPECT_EQ(r.neighbors[0].word, "w17");
    EXPECT_NEAR(r.neighbors[0].similarity, 1.0, 1e-12);
}

TEST(Nearest, TenWordIndexMatchesOracleForEveryK) {
    auto records = testing_support::random_index(10, 6, 21);
    EmbeddingIndex index(records);
    Rng rng(2);
    for (int q = 0; q < 20; ++q) {
        std::vector<double> query(6);
        for (auto& x : query) x = rng.normal();
        for (std::size_t k = 1; k <= 10; ++k) {
            auto got = index.nearest(query, k);
            auto want = oracle_nearest(query, records, k);
            ASSERT_EQ(got.neighbors.size(), want.size());
            EXPECT_FALSE(got.short_result);
            for (std::size_t i = 0; i < want.size(); ++i) {
                EXPECT_EQ(got.neighbors[i].word, want[i].word);
                EXPECT_EQ(got.neighbors[i].similarity, want[i].similarity);
            }
        }
    }
}

TEST(Nearest, LargeIndexMatchesOracle) {
    auto records = testing_support::random_index(10000, 16, 99);
    EmbeddingIndex index(records);
    Rng rng(3);
    for (int q = 0; q < 10; ++q) {
        std::vector<double> query(16);
        for (auto& x : query) x = rng.normal();
        for (std::size_t k : {1u, 5u, 50u}) {
            auto got = index.nearest(query, k);
            auto want = oracle_nearest(query, records, k);
            ASSERT_EQ(got.neighbors.size(), want.size());
            for (std::size_t i = 0; i < want.size(); ++i) {
                EXPECT_EQ(got.neighbors[i].word, want[i].word);
                EXPECT_EQ(got.neighbors[i].similarity, want[i].similarity);
            }
        }
    }
}

TEST(Nearest, ShortResultWhenKExceedsIndex) {
    auto records = testing_support::random_index(5, 4, 1);
    EmbeddingIndex index(records);
    auto r = index.nearest(records[0].vector, 7);
    EXPECT_EQ(r.neighbors.size(), 5u);
    EXPECT_TRUE(r.short_result);
}

TEST(Nearest, TiesBrokenByWord) {
    std::vector<WordEmbedding> records{{"zeta", "x", {1, 0}, {}}, {"alpha", "x", {2, 0}, {}}, {"mid", "x", {0, 1}, {}}};
    EmbeddingIndex index(records);
    auto r = index.nearest(std::vector<double>{1, 0}, 2);
    ASSERT_EQ(r.neighbors.size(), 2u);
    EXPECT_EQ(r.neighbors[0].word, "alpha");
    EXPECT_EQ(r.neighbors[1].word, "zeta");
}

TEST(Nearest, ZeroVectorsSkippedAndQueriesRejected) {
    std::vector<WordEmbedding> records{{"a", "x", {0, 0}, {}}, {"b", "x", {1, 0}, {}}};
    EmbeddingIndex index(records);
    EXPECT_EQ(index.size(), 1u);
    EXPECT_EQ(index.skipped(), 1u);
    EXPECT_THROW(index.nearest(std::vector<double>{0, 0}, 1), ValidationError);
    EXPECT_THROW(index.nearest(std::vector<double>{1, 0}, 0), ValidationError);
}

TEST(LoadEmbeddings, ExporterHeaderFieldsAreAccepted) {
    // Exporters record their model and pooling choice in the header; extra keys are kept out of the way.
    const char* text =
        "{\"dim\":3,\"lang\":\"nyf\",\"count\":2,\"model\":\"byte-encoder\",\"pooling\":\"mean over word bytes\"}\n"
        "{\"word\":\"kitabu\",\"vector\":[0.123456789,-1.00000001,3.14159265]}\n"
        "{\"word\":\"k'ululu\",\"vector\":[1e-9,2.5,-0.333333333]}\n";
    auto dump = parse_embeddings(text, "export");
    EXPECT_EQ(dump.diagnostics.warning_count(), 0u);
    ASSERT_EQ(dump.records.size(), 2u);
    EXPECT_EQ(dump.records[0].vector[0], 0.123456789);
    EXPECT_EQ(dump.records[1].word, "k'ululu");
    auto again = parse_embeddings(render_embeddings(dump), "again");
    EXPECT_EQ(again.records[0].vector, dump.records[0].vector);
}
