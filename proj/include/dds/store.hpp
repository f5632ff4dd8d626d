#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dds/record.hpp"

namespace dds {

class StoreError : public std::runtime_error {
public:
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

// Create/overwrite a SQLite database with a single table "tilings" in
// schema order; returns the row count.
long long write_database(const std::vector<TilingRecord>& records, const std::string& path);
std::vector<TilingRecord> read_database(const std::string& path);

// Tab-separated sidecar with a header row; booleans as true/false.
void write_tsv(const std::vector<TilingRecord>& records, std::ostream& out);
long long write_tsv_file(const std::vector<TilingRecord>& records, const std::string& path);
std::vector<TilingRecord> read_tsv_file(const std::string& path);

std::string record_to_tsv_line(const TilingRecord& r);

}  // namespace dds
