#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace miggpt {

/// Where a snippet came from inside a larger file, when known.
struct SnippetOrigin {
    std::string path;
    int line_offset = 0;  // number of file lines preceding line 1 of the snippet
};

/// An immutable, 1-indexed table of text lines. Round-trips byte-identically
/// to the input text except for a single trailing-newline normalization,
/// which is recorded in trailing_newline().
class SourceSnippet {
public:
    SourceSnippet() = default;

    explicit SourceSnippet(std::vector<std::string> lines, bool trailing_newline = true)
        : lines_(std::move(lines)), trailing_newline_(trailing_newline) {}

    static SourceSnippet from_text(std::string_view text);
    static SourceSnippet from_file(const std::string& path);

    const std::vector<std::string>& lines() const { return lines_; }
    int line_count() const { return static_cast<int>(lines_.size()); }
    bool empty() const { return lines_.empty(); }

    /// 1-indexed access; number must be in [1, line_count()].
    const std::string& line(int number) const { return lines_.at(static_cast<size_t>(number - 1)); }

    std::string to_text() const;
    bool trailing_newline() const { return trailing_newline_; }

    /// Sub-snippet covering lines [first, last], both 1-indexed inclusive.
    SourceSnippet slice(int first, int last) const;

    bool operator==(const SourceSnippet& other) const { return lines_ == other.lines_; }

    std::optional<SnippetOrigin> origin;

private:
    std::vector<std::string> lines_;
    bool trailing_newline_ = true;
};

}  // namespace miggpt
