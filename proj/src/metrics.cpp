#include "miggpt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "miggpt/cfp.hpp"

namespace miggpt {

bool best_match(const SourceSnippet& candidate, const SourceSnippet& truth) {
    const auto strip = [](const SourceSnippet& s) {
        std::string out;
        for (const auto& line : s.lines())
            for (char c : line)
                if (c != ' ' && c != '\t' && c != '\r') out += c;
        return out;
    };
    return strip(candidate) == strip(truth);
}

namespace {

const std::set<std::string>& c_keywords() {
    static const std::set<std::string> kw = {
        "auto", "break", "case", "char", "const", "continue", "default", "do",
        "double", "else", "enum", "extern", "float", "for", "goto", "if",
        "inline", "int", "long", "register", "return", "short", "signed",
        "sizeof", "static", "struct", "switch", "typedef", "union", "unsigned",
        "void", "volatile", "while",
    };
    return kw;
}

std::vector<std::string> metric_tokens(const SourceSnippet& s) {
    std::vector<std::string> out;
    LexState state;
    for (const auto& line : s.lines()) {
        for (auto& tok : tokenize_line(line, state)) out.push_back(std::move(tok.text));
    }
    return out;
}

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts count_ngrams(const std::vector<std::string>& toks, size_t n) {
    NgramCounts counts;
    if (toks.size() < n) return counts;
    for (size_t i = 0; i + n <= toks.size(); ++i) {
        counts[std::vector<std::string>(toks.begin() + static_cast<long>(i),
                                        toks.begin() + static_cast<long>(i + n))]++;
    }
    return counts;
}

double token_weight(const std::vector<std::string>& ngram, bool weighted) {
    if (!weighted) return 1.0;
    // Keyword-bearing n-grams weigh 5x.
    for (const auto& t : ngram)
        if (c_keywords().count(t)) return 5.0;
    return 1.0;
}

double bleu(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
            bool weighted) {
    if (cand.empty()) return ref.empty() ? 1.0 : 0.0;
    const size_t max_n = std::min<size_t>(4, cand.size());
    double log_sum = 0.0;
    size_t used = 0;
    for (size_t n = 1; n <= max_n; ++n) {
        NgramCounts c = count_ngrams(cand, n);
        NgramCounts r = count_ngrams(ref, n);
        double total = 0.0, matched = 0.0;
        for (const auto& [gram, count] : c) {
            double w = token_weight(gram, weighted);
            total += w * count;
            auto it = r.find(gram);
            if (it != r.end()) matched += w * std::min(count, it->second);
        }
        if (total == 0.0) continue;
        // Lin-Och add-one smoothing above unigrams keeps identical inputs at 1.
        double p = n == 1 ? matched / total : (matched + 1.0) / (total + 1.0);
        if (p <= 0.0) p = 1.0 / (2.0 * total);
        log_sum += std::log(p);
        ++used;
    }
    if (used == 0) return 0.0;
    double precision = std::exp(log_sum / static_cast<double>(used));
    double bp = 1.0;
    if (cand.size() < ref.size())
        bp = std::exp(1.0 - static_cast<double>(ref.size()) / static_cast<double>(cand.size()));
    return bp * precision;
}

std::vector<CfpNodeKind> kind_sequence(const SourceSnippet& s) {
    std::vector<CfpNodeKind> out;
    Cfp cfp = generate_cfp(s);
    for (const CfpNode* node : flatten(cfp)) out.push_back(node->kind);
    return out;
}

int seq_levenshtein(const std::vector<CfpNodeKind>& a, const std::vector<CfpNodeKind>& b) {
    const size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1), cur(m + 1);
    for (size_t j = 0; j <= m; ++j) prev[j] = static_cast<int>(j);
    for (size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (size_t j = 1; j <= m; ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[m];
}

double structure_similarity(const SourceSnippet& cand, const SourceSnippet& ref) {
    auto ka = kind_sequence(cand);
    auto kb = kind_sequence(ref);
    if (ka.empty() && kb.empty()) return 1.0;
    size_t longest = std::max(ka.size(), kb.size());
    return 1.0 - static_cast<double>(seq_levenshtein(ka, kb)) / static_cast<double>(longest);
}

bool is_compound_neighbor(const std::string& t) {
    return t == "=" || t == "<" || t == ">" || t == "!" || t == "+" || t == "-" || t == "*" ||
           t == "/" || t == "%" || t == "&" || t == "|" || t == "^";
}

// Lexical def-use pairs: for each plain assignment `x = expr;`, one pair per
// identifier used in expr.
std::set<std::pair<std::string, std::string>> defuse_pairs(const SourceSnippet& s) {
    std::set<std::pair<std::string, std::string>> pairs;
    LexState state;
    std::vector<Token> toks;
    for (const auto& line : s.lines())
        for (auto& t : tokenize_line(line, state))
            if (t.kind != TokenKind::Comment) toks.push_back(std::move(t));

    for (size_t i = 1; i + 1 < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Punct || toks[i].text != "=") continue;
        if (is_compound_neighbor(toks[i - 1].text) && toks[i - 1].kind == TokenKind::Punct)
            continue;
        if (toks[i + 1].kind == TokenKind::Punct && toks[i + 1].text == "=") {
            ++i;  // '==' comparison
            continue;
        }
        if (toks[i - 1].kind != TokenKind::Ident) continue;
        const std::string& def = toks[i - 1].text;
        for (size_t j = i + 1; j < toks.size(); ++j) {
            if (toks[j].kind == TokenKind::Punct && toks[j].text == ";") break;
            if (toks[j].kind == TokenKind::Ident && !c_keywords().count(toks[j].text))
                pairs.insert({def, toks[j].text});
        }
    }
    return pairs;
}

double dataflow_similarity(const SourceSnippet& cand, const SourceSnippet& ref) {
    auto pa = defuse_pairs(cand);
    auto pb = defuse_pairs(ref);
    if (pa.empty() && pb.empty()) return 1.0;
    std::vector<std::pair<std::string, std::string>> inter;
    std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(inter));
    size_t uni = pa.size() + pb.size() - inter.size();
    return static_cast<double>(inter.size()) / static_cast<double>(uni);
}

}  // namespace

SemanticComponents semantic_components(const SourceSnippet& candidate, const SourceSnippet& truth) {
    SemanticComponents c;
    auto cand_toks = metric_tokens(candidate);
    auto truth_toks = metric_tokens(truth);
    c.ngram = bleu(cand_toks, truth_toks, false);
    c.weighted_ngram = bleu(cand_toks, truth_toks, true);
    c.structure = structure_similarity(candidate, truth);
    c.dataflow = dataflow_similarity(candidate, truth);
    return c;
}

double semantic_score(const SourceSnippet& candidate, const SourceSnippet& truth) {
    bool cand_blank = candidate.to_text().find_first_not_of(" \t\r\n") == std::string::npos;
    bool truth_blank = truth.to_text().find_first_not_of(" \t\r\n") == std::string::npos;
    if (cand_blank && !truth_blank) return 0.0;
    if (cand_blank && truth_blank) return 1.0;
    double s = semantic_components(candidate, truth).composite();
    return std::clamp(s, 0.0, 1.0);
}

std::string to_string(EditBucket bucket) {
    switch (bucket) {
        case EditBucket::Under3: return "<3";
        case EditBucket::From3To5: return "3-5";
        case EditBucket::From6To8: return "6-8";
        case EditBucket::NineUp: return ">=9";
    }
    return "<3";
}

EditBucket edit_bucket(int distance) {
    if (distance < 3) return EditBucket::Under3;
    if (distance < 6) return EditBucket::From3To5;
    if (distance < 9) return EditBucket::From6To8;
    return EditBucket::NineUp;
}

ExampleScore score_example(const std::string& example_id, const SourceSnippet& candidate,
                           const SourceSnippet& truth, int attempts, double threshold) {
    ExampleScore score;
    score.example_id = example_id;
    score.best = best_match(candidate, truth);
    score.semantic = score.best ? 1.0 : semantic_score(candidate, truth);
    score.semantic_ok = score.semantic >= threshold;
    score.edit_distance = score.best ? 0 : line_edit_distance(candidate, truth);
    score.bucket = edit_bucket(score.edit_distance);
    score.attempts = attempts;
    return score;
}

AggregateReport aggregate(const std::vector<ExampleScore>& scores) {
    if (scores.empty()) throw std::runtime_error("EmptyRun: no scores to aggregate");

    const auto fold = [](const std::vector<const ExampleScore*>& rows) {
        AggregateRow out;
        out.count = static_cast<int>(rows.size());
        if (rows.empty()) return out;
        int best = 0, sem = 0;
        double att = 0.0;
        for (const ExampleScore* s : rows) {
            best += s->best ? 1 : 0;
            sem += s->semantic_ok ? 1 : 0;
            att += s->attempts;
            out.bucket_histogram[to_string(s->bucket)]++;
        }
        out.best_rate = static_cast<double>(best) / out.count;
        out.semantic_rate = static_cast<double>(sem) / out.count;
        out.mean_attempts = att / out.count;
        return out;
    };

    AggregateReport report;
    std::vector<const ExampleScore*> all;
    std::map<std::string, std::vector<const ExampleScore*>> typed;
    for (const auto& s : scores) {
        all.push_back(&s);
        if (s.mig_type) typed[to_string(*s.mig_type)].push_back(&s);
    }
    report.overall = fold(all);
    for (const auto& [name, rows] : typed) report.per_type[name] = fold(rows);
    return report;
}

namespace {

nlohmann::ordered_json row_to_json(const AggregateRow& row) {
    nlohmann::ordered_json j;
    j["count"] = row.count;
    j["best_rate"] = row.best_rate;
    j["semantic_rate"] = row.semantic_rate;
    j["mean_attempts"] = row.mean_attempts;
    j["bucket_histogram"] = row.bucket_histogram;
    return j;
}

}  // namespace

std::string AggregateReport::to_json(int indent) const {
    nlohmann::ordered_json j;
    j["overall"] = row_to_json(overall);
    nlohmann::ordered_json types;
    for (const auto& [name, row] : per_type) types[name] = row_to_json(row);
    j["per_type"] = std::move(types);
    return j.dump(indent);
}

std::string AggregateReport::to_text() const {
    std::ostringstream out;
    const auto line = [&out](const std::string& label, const AggregateRow& row) {
        out << std::left << std::setw(28) << label << std::right << std::setw(6) << row.count
            << std::setw(12) << std::fixed << std::setprecision(2) << row.best_rate * 100.0
            << "%" << std::setw(12) << row.semantic_rate * 100.0 << "%" << std::setw(10)
            << row.mean_attempts << "\n";
    };
    out << std::left << std::setw(28) << "Type" << std::right << std::setw(6) << "N"
        << std::setw(13) << "Best" << std::setw(13) << "Semantic" << std::setw(10) << "Attempts"
        << "\n";
    for (const auto& [name, row] : per_type) line(name, row);
    line("All", overall);
    return out.str();
}

std::string AggregateReport::to_csv(const std::vector<ExampleScore>& scores) const {
    std::ostringstream out;
    out << "example_id,mig_type,best_match,semantic_score,semantic_match,edit_distance,"
           "edit_bucket,attempts\n";
    for (const auto& s : scores) {
        out << s.example_id << ',' << (s.mig_type ? to_string(*s.mig_type) : "") << ','
            << (s.best ? 1 : 0) << ',' << std::fixed << std::setprecision(6) << s.semantic << ','
            << (s.semantic_ok ? 1 : 0) << ',' << s.edit_distance << ',' << to_string(s.bucket)
            << ',' << s.attempts << "\n";
    }
    return out.str();
}

}  // namespace miggpt
