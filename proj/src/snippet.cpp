#include "miggpt/snippet.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace miggpt {

SourceSnippet SourceSnippet::from_text(std::string_view text) {
    std::vector<std::string> lines;
    bool trailing = true;
    if (!text.empty()) {
        size_t start = 0;
        while (start <= text.size()) {
            size_t nl = text.find('\n', start);
            if (nl == std::string_view::npos) {
                lines.emplace_back(text.substr(start));
                trailing = false;
                break;
            }
            lines.emplace_back(text.substr(start, nl - start));
            start = nl + 1;
            if (start == text.size()) break;  // text ended with newline
        }
    }
    return SourceSnippet(std::move(lines), trailing);
}

SourceSnippet SourceSnippet::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    SourceSnippet s = from_text(buf.str());
    s.origin = SnippetOrigin{path, 0};
    return s;
}

std::string SourceSnippet::to_text() const {
    std::string out;
    for (size_t i = 0; i < lines_.size(); ++i) {
        out += lines_[i];
        if (i + 1 < lines_.size() || trailing_newline_) out += '\n';
    }
    return out;
}

SourceSnippet SourceSnippet::slice(int first, int last) const {
    if (first < 1) first = 1;
    if (last > line_count()) last = line_count();
    std::vector<std::string> sub;
    for (int i = first; i <= last; ++i) sub.push_back(line(i));
    SourceSnippet s(std::move(sub), true);
    if (origin) {
        s.origin = SnippetOrigin{origin->path, origin->line_offset + first - 1};
    } else {
        s.origin = SnippetOrigin{"", first - 1};
    }
    return s;
}

}  // namespace miggpt
