#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace cvdloss {

inline const std::set<std::string> kDefaultCategories = {
    "candy", "cartoon", "coral_reef", "flower",
    "fruit", "parrot", "poster", "street_view"};

struct ImageRecord {
    std::string path;
    std::string category;
    std::string prompt_type;
    std::optional<long> seed;
};

struct DatasetManifest {
    std::vector<ImageRecord> records;
    std::set<std::string> category_vocabulary = kDefaultCategories;
};

// Tab-separated manifest with a header line naming the columns
// path, category, prompt_type and optionally seed. Validation failures
// (unknown vocabulary, duplicate or missing paths) throw std::runtime_error
// naming the offending record. Categories outside the default vocabulary are
// accepted when extra_categories lists them.
DatasetManifest load_manifest(const std::string& path,
                              const std::set<std::string>& extra_categories = {});

DatasetManifest parse_manifest(const std::string& text, const std::string& source_name,
                               const std::set<std::string>& extra_categories = {},
                               bool check_paths = true);

// Builds a manifest from a <root>/<category>/<prompt_type>/*.png layout.
DatasetManifest discover_manifest(const std::string& root_dir,
                                  const std::set<std::string>& extra_categories = {});

std::string format_manifest(const DatasetManifest& m);

}  // namespace cvdloss
