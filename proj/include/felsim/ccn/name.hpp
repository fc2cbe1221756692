#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace felsim::ccn {

/// Hierarchical content name such as /video/news/clip7.
///
/// Ordering and equality follow the canonical text form.
class ContentName {
public:
    static constexpr std::size_t kMaxBytes = 1024;

    ContentName() = default;
    /// Throws InvalidName on an empty component list, empty segment, or oversize name.
    explicit ContentName(std::vector<std::string> components);

    /// Parses "/a/b/c". Throws InvalidName.
    static ContentName parse(std::string_view text);

    const std::vector<std::string>& components() const noexcept { return components_; }
    std::size_t size() const noexcept { return components_.size(); }
    const std::string& str() const noexcept { return canonical_; }

    bool is_prefix_of(const ContentName& other) const noexcept;
    ContentName prefix(std::size_t n) const;

    bool operator==(const ContentName& other) const noexcept { return canonical_ == other.canonical_; }
    std::strong_ordering operator<=>(const ContentName& other) const noexcept {
        return canonical_.compare(other.canonical_) <=> 0;
    }

private:
    std::vector<std::string> components_;
    std::string canonical_;
};

} // namespace felsim::ccn

template <>
struct std::hash<felsim::ccn::ContentName> {
    std::size_t operator()(const felsim::ccn::ContentName& n) const noexcept { return std::hash<std::string>{}(n.str()); }
};
