#include "felsim/ccn/name.hpp"

#include "felsim/error.hpp"

namespace felsim::ccn {

ContentName::ContentName(std::vector<std::string> components) : components_(std::move(components)) {
    if (components_.empty()) throw InvalidName("content name needs at least one component");
    for (const auto& c : components_) {
        if (c.empty()) throw InvalidName("content name has an empty component");
        canonical_ += '/';
        canonical_ += c;
    }
    if (canonical_.size() > kMaxBytes) {
        throw InvalidName("content name exceeds " + std::to_string(kMaxBytes) + " bytes");
    }
}

ContentName ContentName::parse(std::string_view text) {
    if (text.empty() || text.front() != '/') throw InvalidName("content name must start with '/': " + std::string(text));
    std::vector<std::string> parts;
    std::size_t pos = 1;
    while (pos <= text.size()) {
        const auto next = text.find('/', pos);
        const auto end = next == std::string_view::npos ? text.size() : next;
        parts.emplace_back(text.substr(pos, end - pos));
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    return ContentName(std::move(parts));
}

bool ContentName::is_prefix_of(const ContentName& other) const noexcept {
    if (components_.size() > other.components_.size()) return false;
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i] != other.components_[i]) return false;
    }
    return true;
}

ContentName ContentName::prefix(std::size_t n) const {
    return ContentName(std::vector<std::string>(components_.begin(), components_.begin() + std::min(n, size())));
}

} // namespace felsim::ccn
