#include "felsim/ccn/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>

#include "felsim/error.hpp"

namespace felsim::ccn {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view to_string(ContentClass cls) { return cls == ContentClass::TypeA ? "TypeA" : "TypeB"; }

ContentClass parse_content_class(std::string_view text) {
    const auto t = lower(text);
    if (t == "a" || t == "typea") return ContentClass::TypeA;
    if (t == "b" || t == "typeb") return ContentClass::TypeB;
    throw InvalidSpec("unknown content class '" + std::string(text) + "'");
}

void ContentCatalog::add(ContentName name, std::uint64_t size_bytes, ContentClass cls) {
    if (size_bytes == 0) throw InvalidSpec("catalog item " + name.str() + " has zero size");
    if (index_.contains(name.str())) throw InvalidSpec("duplicate catalog name " + name.str());
    index_.emplace(name.str(), items_.size());
    (cls == ContentClass::TypeA ? slice_a_ : slice_b_).push_back(name);
    items_.push_back(CatalogItem{std::move(name), size_bytes, cls});
}

const CatalogItem* ContentCatalog::find(const ContentName& name) const {
    const auto it = index_.find(name.str());
    return it == index_.end() ? nullptr : &items_[it->second];
}

const std::vector<ContentName>& ContentCatalog::slice(ContentClass cls) const {
    return cls == ContentClass::TypeA ? slice_a_ : slice_b_;
}

std::vector<ContentName> ContentCatalog::top_level_prefixes() const {
    std::set<ContentName> prefixes;
    for (const auto& item : items_) prefixes.insert(item.name.prefix(1));
    return {prefixes.begin(), prefixes.end()};
}

ContentCatalog build_catalog(const CatalogSpec& spec) {
    if (spec.items_per_class == 0) throw InvalidSpec("catalog needs at least one item per class");
    ContentCatalog catalog;
    char buf[32];
    for (const auto cls : {ContentClass::TypeA, ContentClass::TypeB}) {
        const std::string top = cls == ContentClass::TypeA ? "a" : "b";
        for (std::uint32_t i = 1; i <= spec.items_per_class; ++i) {
            std::snprintf(buf, sizeof buf, "item-%04u", i);
            catalog.add(ContentName({top, buf}), spec.size_bytes, cls);
        }
    }
    return catalog;
}

ContentName translate(std::span<const std::string> keywords, const ContentCatalog& catalog) {
    if (keywords.empty()) throw NoMatch("no keywords given");
    std::vector<std::string> wanted;
    for (const auto& k : keywords) wanted.push_back(lower(k));

    const ContentName* best = nullptr;
    for (const auto& item : catalog.items()) {
        std::set<std::string> segments;
        for (const auto& c : item.name.components()) segments.insert(lower(c));
        const bool all = std::all_of(wanted.begin(), wanted.end(), [&](const auto& w) { return segments.contains(w); });
        if (!all) continue;
        if (!best || item.name.size() < best->size() || (item.name.size() == best->size() && item.name < *best)) {
            best = &item.name;
        }
    }
    if (!best) {
        std::string joined;
        for (const auto& k : keywords) joined += (joined.empty() ? "" : ", ") + k;
        throw NoMatch("no catalog name contains [" + joined + "]");
    }
    return *best;
}

} // namespace felsim::ccn
