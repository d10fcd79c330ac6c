#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "miggpt/metrics.hpp"

using namespace miggpt;

static SourceSnippet text(const char* t) { return SourceSnippet::from_text(t); }

static std::string random_snippet(std::mt19937& rng) {
    std::uniform_int_distribution<int> nlines(1, 12), shape(0, 4), var(0, 5);
    std::string out;
    int n = nlines(rng);
    for (int i = 0; i < n; ++i) {
        std::string v = "v" + std::to_string(var(rng));
        switch (shape(rng)) {
            case 0: out += "\tint " + v + " = " + std::to_string(var(rng)) + ";\n"; break;
            case 1: out += "\t" + v + " = helper_" + std::to_string(var(rng)) + "(" + v + ");\n"; break;
            case 2: out += "\tif (" + v + " > 0)\n\t\treturn " + v + ";\n"; break;
            case 3: out += "\t/* step " + std::to_string(i) + " */\n"; break;
            default: out += "\twhile (" + v + "--)\n\t\tpoll();\n"; break;
        }
    }
    return out;
}

TEST_CASE("best_match ignores spaces tabs and line breaks") {
    CHECK(best_match(text("int x ;\n"), text("int\tx;")));
    CHECK(best_match(text("int x;\n"), text("int x;\n")));
    CHECK(best_match(text("int\r\nx;\n"), text("intx;")));
    CHECK(!best_match(text("int x;\n"), text("int y;\n")));
}

TEST_CASE("best_match equals equality of whitespace-normalized texts on random pairs") {
    std::mt19937 rng(5);
    const auto normalize = [](const SourceSnippet& s) {
        std::string out;
        for (char c : s.to_text())
            if (c != ' ' && c != '\t' && c != '\r' && c != '\n') out += c;
        return out;
    };
    for (int iter = 0; iter < 200; ++iter) {
        SourceSnippet a = text(random_snippet(rng).c_str());
        std::string mutated = a.to_text();
        if (iter % 2 == 0) {
            // Whitespace-only mutation.
            for (size_t i = 0; i < mutated.size(); i += 7)
                if (mutated[i] == ' ') mutated.insert(i, "\t ");
        } else if (!mutated.empty()) {
            mutated[mutated.size() / 2] = 'Q';
        }
        SourceSnippet b = text(mutated.c_str());
        REQUIRE(best_match(a, b) == (normalize(a) == normalize(b)));
    }
}

TEST_CASE("semantic_score is 1 on identical snippets") {
    std::mt19937 rng(9);
    for (int iter = 0; iter < 100; ++iter) {
        SourceSnippet s = text(random_snippet(rng).c_str());
        REQUIRE(semantic_score(s, s) == doctest::Approx(1.0));
    }
}

TEST_CASE("semantic_score degenerate cases") {
    CHECK(semantic_score(text(""), text("int x;\n")) == 0.0);
    CHECK(semantic_score(text("\n \n"), text("int x;\n")) == 0.0);
    CHECK(semantic_score(text(""), text("")) == 1.0);
}

TEST_CASE("semantic_score is bounded and discriminates") {
    SourceSnippet truth = text("int f(void)\n{\n\tint a = g(b);\n\treturn a;\n}\n");
    SourceSnippet close = text("int f(void)\n{\n\tint a = g(c);\n\treturn a;\n}\n");
    SourceSnippet far = text("#define UNRELATED 1\n");
    double s_close = semantic_score(close, truth);
    double s_far = semantic_score(far, truth);
    CHECK(s_close > s_far);
    CHECK(s_close <= 1.0);
    CHECK(s_far >= 0.0);
    CHECK(s_close < 1.0);
}

TEST_CASE("component weights are a quarter each") {
    SemanticComponents c{1.0, 0.0, 1.0, 0.0};
    CHECK(c.composite() == doctest::Approx(0.5));
}

TEST_CASE("edit buckets follow the boundaries") {
    CHECK(edit_bucket(0) == EditBucket::Under3);
    CHECK(edit_bucket(2) == EditBucket::Under3);
    CHECK(edit_bucket(3) == EditBucket::From3To5);
    CHECK(edit_bucket(5) == EditBucket::From3To5);
    CHECK(edit_bucket(6) == EditBucket::From6To8);
    CHECK(edit_bucket(8) == EditBucket::From6To8);
    CHECK(edit_bucket(9) == EditBucket::NineUp);
    CHECK(edit_bucket(30) == EditBucket::NineUp);
}

TEST_CASE("edit_bucket is monotone") {
    for (int d = 0; d < 40; ++d)
        CHECK(static_cast<int>(edit_bucket(d)) <= static_cast<int>(edit_bucket(d + 1)));
}

TEST_CASE("best match forces full scores") {
    ExampleScore s = score_example("e", text("int  x;\n"), text("int x;\n"), 2);
    CHECK(s.best);
    CHECK(s.semantic == 1.0);
    CHECK(s.edit_distance == 0);
    CHECK(s.bucket == EditBucket::Under3);
    CHECK(s.attempts == 2);
}

TEST_CASE("best_match implies semantic match at the default threshold") {
    std::mt19937 rng(13);
    for (int iter = 0; iter < 50; ++iter) {
        SourceSnippet s = text(random_snippet(rng).c_str());
        std::string spaced;
        for (char c : s.to_text()) {
            spaced += c;
            if (c == ';') spaced += "  ";
        }
        ExampleScore score = score_example("e", text(spaced.c_str()), s, 1);
        REQUIRE(score.best);
        REQUIRE(score.semantic_ok);
    }
}

TEST_CASE("aggregate folds rates and buckets") {
    std::vector<ExampleScore> scores;
    int distances[] = {0, 4, 7, 12};
    for (int i = 0; i < 4; ++i) {
        ExampleScore s;
        s.example_id = "e" + std::to_string(i);
        s.best = i < 2;
        s.semantic = s.best ? 1.0 : 0.5;
        s.semantic_ok = s.best;
        s.edit_distance = distances[i];
        s.bucket = edit_bucket(distances[i]);
        s.attempts = i + 1;
        s.mig_type = i % 2 == 0 ? MigrationType::Type1 : MigrationType::Type2;
        scores.push_back(s);
    }
    AggregateReport r = aggregate(scores);
    CHECK(r.overall.count == 4);
    CHECK(r.overall.best_rate == doctest::Approx(0.5));
    CHECK(r.overall.semantic_rate == doctest::Approx(0.5));
    CHECK(r.overall.mean_attempts == doctest::Approx(2.5));
    CHECK(r.overall.bucket_histogram.at("<3") == 1);
    CHECK(r.overall.bucket_histogram.at("3-5") == 1);
    CHECK(r.overall.bucket_histogram.at("6-8") == 1);
    CHECK(r.overall.bucket_histogram.at(">=9") == 1);
    CHECK(r.per_type.at("Type1").count == 2);
    CHECK(r.per_type.at("Type2").count == 2);
    int typed_total = 0;
    for (const auto& [name, row] : r.per_type) typed_total += row.count;
    CHECK(typed_total == r.overall.count);
}

TEST_CASE("aggregate of nothing throws EmptyRun") {
    CHECK_THROWS_WITH_AS(aggregate({}), doctest::Contains("EmptyRun"), std::runtime_error);
}

TEST_CASE("report serializations carry the rows") {
    ExampleScore s;
    s.example_id = "only";
    s.best = true;
    s.semantic = 1.0;
    s.semantic_ok = true;
    s.mig_type = MigrationType::Type1;
    AggregateReport r = aggregate({s});
    CHECK(r.to_json().find("\"best_rate\": 1.0") != std::string::npos);
    CHECK(r.to_text().find("Type1") != std::string::npos);
    CHECK(r.to_text().find("All") != std::string::npos);
    std::string csv = r.to_csv({s});
    CHECK(csv.find("example_id,") == 0);
    CHECK(csv.find("only,Type1,1,") != std::string::npos);
}
