#include "cvdloss/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "cvdloss/simulate.hpp"

namespace fs = std::filesystem;

namespace cvdloss {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    while (true) {
        const auto tab = line.find('\t', start);
        out.push_back(line.substr(start, tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
    }
    return out;
}

std::string join(const std::set<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

bool valid_prompt_type(const std::string& t) {
    return std::find(kPromptTypes.begin(), kPromptTypes.end(), t) != kPromptTypes.end();
}

std::string prompt_vocabulary() {
    std::string out;
    for (auto t : kPromptTypes) {
        if (!out.empty()) out += ", ";
        out += t;
    }
    return out;
}

void validate(DatasetManifest& m, const std::string& source_name, bool check_paths) {
    if (m.records.empty()) {
        throw std::runtime_error(source_name + ": manifest has no records");
    }
    std::unordered_set<std::string> seen;
    for (const auto& rec : m.records) {
        if (!seen.insert(rec.path).second) {
            throw std::runtime_error(source_name + ": duplicate path '" + rec.path + "'");
        }
        if (!valid_prompt_type(rec.prompt_type)) {
            throw std::runtime_error(source_name + ": record '" + rec.path +
                                     "' has unknown prompt_type '" + rec.prompt_type +
                                     "' (expected one of: " + prompt_vocabulary() + ")");
        }
        if (!m.category_vocabulary.count(rec.category)) {
            throw std::runtime_error(source_name + ": record '" + rec.path +
                                     "' has unknown category '" + rec.category +
                                     "' (expected one of: " + join(m.category_vocabulary) + ")");
        }
        if (check_paths && !fs::exists(rec.path)) {
            throw std::runtime_error(source_name + ": image file not found: '" + rec.path + "'");
        }
    }
}

}  // namespace

DatasetManifest parse_manifest(const std::string& text, const std::string& source_name,
                               const std::set<std::string>& extra_categories,
                               bool check_paths) {
    DatasetManifest m;
    m.category_vocabulary.insert(extra_categories.begin(), extra_categories.end());

    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error(source_name + ": empty manifest");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_tabs(line);
    // Column order is free; path, category and prompt_type are required.
    int col_path = -1, col_category = -1, col_prompt = -1, col_seed = -1;
    for (int i = 0; i < static_cast<int>(header.size()); ++i) {
        if (header[i] == "path") col_path = i;
        else if (header[i] == "category") col_category = i;
        else if (header[i] == "prompt_type") col_prompt = i;
        else if (header[i] == "seed") col_seed = i;
    }
    if (col_path < 0 || col_category < 0 || col_prompt < 0) {
        throw std::runtime_error(source_name +
                                 ": header must name columns path, category, prompt_type");
    }

    int lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_tabs(line);
        const auto need = static_cast<std::size_t>(std::max({col_path, col_category, col_prompt}));
        if (fields.size() <= need) {
            throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                                     ": expected at least " + std::to_string(need + 1) +
                                     " tab-separated fields");
        }
        ImageRecord rec;
        rec.path = fields[col_path];
        rec.category = fields[col_category];
        rec.prompt_type = fields[col_prompt];
        if (col_seed >= 0 && static_cast<std::size_t>(col_seed) < fields.size() &&
            !fields[col_seed].empty()) {
            try {
                rec.seed = std::stol(fields[col_seed]);
            } catch (const std::exception&) {
                throw std::runtime_error(source_name + ":" + std::to_string(lineno) +
                                         ": bad seed '" + fields[col_seed] + "'");
            }
        }
        m.records.push_back(std::move(rec));
    }
    validate(m, source_name, check_paths);
    return m;
}

DatasetManifest load_manifest(const std::string& path,
                              const std::set<std::string>& extra_categories) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("failed to open manifest '" + path + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_manifest(buf.str(), path, extra_categories);
}

DatasetManifest discover_manifest(const std::string& root_dir,
                                  const std::set<std::string>& extra_categories) {
    if (!fs::is_directory(root_dir)) {
        throw std::runtime_error("'" + root_dir + "' is not a directory");
    }
    DatasetManifest m;
    m.category_vocabulary.insert(extra_categories.begin(), extra_categories.end());
    for (const auto& cat_entry : fs::directory_iterator(root_dir)) {
        if (!cat_entry.is_directory()) continue;
        const std::string category = cat_entry.path().filename().string();
        for (const auto& prompt_entry : fs::directory_iterator(cat_entry.path())) {
            if (!prompt_entry.is_directory()) continue;
            const std::string prompt_type = prompt_entry.path().filename().string();
            for (const auto& file : fs::directory_iterator(prompt_entry.path())) {
                if (file.path().extension() != ".png") continue;
                m.records.push_back({file.path().string(), category, prompt_type, std::nullopt});
            }
        }
    }
    std::sort(m.records.begin(), m.records.end(),
              [](const ImageRecord& a, const ImageRecord& b) { return a.path < b.path; });
    validate(m, root_dir, /*check_paths=*/false);
    return m;
}

std::string format_manifest(const DatasetManifest& m) {
    std::string out = "path\tcategory\tprompt_type\tseed\n";
    for (const auto& rec : m.records) {
        out += rec.path + '\t' + rec.category + '\t' + rec.prompt_type + '\t';
        if (rec.seed) out += std::to_string(*rec.seed);
        out += '\n';
    }
    return out;
}

}  // namespace cvdloss
