#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "felsim/ccn/name.hpp"

namespace felsim::ccn {

enum class ContentClass : std::uint8_t { TypeA, TypeB };

std::string_view to_string(ContentClass cls);
/// Accepts "a"/"b" as well as "TypeA"/"TypeB" (case-insensitive).
ContentClass parse_content_class(std::string_view text);

struct CatalogItem {
    ContentName name;
    std::uint64_t size_bytes = 1;
    ContentClass cls = ContentClass::TypeA;
};

class ContentCatalog {
public:
    /// Throws InvalidSpec on duplicate names or zero size.
    void add(ContentName name, std::uint64_t size_bytes, ContentClass cls);

    const std::vector<CatalogItem>& items() const noexcept { return items_; }
    std::size_t size() const noexcept { return items_.size(); }
    const CatalogItem* find(const ContentName& name) const;
    bool contains(const ContentName& name) const { return find(name) != nullptr; }

    /// Names of one class, in insertion order (rank order for Zipf draws).
    const std::vector<ContentName>& slice(ContentClass cls) const;

    /// Distinct first components, used as FIB prefixes.
    std::vector<ContentName> top_level_prefixes() const;

private:
    std::vector<CatalogItem> items_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<ContentName> slice_a_;
    std::vector<ContentName> slice_b_;
};

struct CatalogSpec {
    std::uint32_t items_per_class = 50;
    std::uint64_t size_bytes = 1'000'000;
};

/// Items are named /a/item-0001 ... and /b/item-0001 ...; rank follows the index.
ContentCatalog build_catalog(const CatalogSpec& spec);

/// Maps user keywords to the catalog name whose components contain every keyword
/// (case-insensitive, whole-segment). Among several matches the shortest name wins,
/// then the canonically smallest. Throws NoMatch.
ContentName translate(std::span<const std::string> keywords, const ContentCatalog& catalog);

} // namespace felsim::ccn
