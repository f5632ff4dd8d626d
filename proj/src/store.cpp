#include "dds/store.hpp"

#include <sqlite3.h>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace dds {

namespace {

const char* kCreateTable =
    "CREATE TABLE tilings ("
    "id INTEGER PRIMARY KEY,"
    "symbol TEXT,"
    "complexity INTEGER,"
    "geometry TEXT,"
    "curvature TEXT,"
    "euler REAL,"
    "orbifold TEXT,"
    "symmetry_class TEXT,"
    "signature TEXT,"
    "tile_deg TEXT,"
    "vertex_deg TEXT,"
    "tiles INTEGER,"
    "edges INTEGER,"
    "vertices INTEGER,"
    "normal BOOLEAN,"
    "maximal BOOLEAN,"
    "colorable BOOLEAN,"
    "orientable BOOLEAN,"
    "fixed_point_free BOOLEAN,"
    "self_dual BOOLEAN)";

struct Db {
    sqlite3* handle = nullptr;
    explicit Db(const std::string& path, bool create) {
        int flags = create ? (SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE) : SQLITE_OPEN_READONLY;
        if (sqlite3_open_v2(path.c_str(), &handle, flags, nullptr) != SQLITE_OK) {
            std::string msg = handle ? sqlite3_errmsg(handle) : "cannot open database";
            sqlite3_close(handle);
            throw StoreError(path + ": " + msg);
        }
    }
    ~Db() { sqlite3_close(handle); }
    void exec(const char* sql) {
        char* err = nullptr;
        if (sqlite3_exec(handle, sql, nullptr, nullptr, &err) != SQLITE_OK) {
            std::string msg = err ? err : "sqlite error";
            sqlite3_free(err);
            throw StoreError(msg);
        }
    }
};

struct Stmt {
    sqlite3_stmt* stmt = nullptr;
    Stmt(sqlite3* db, const char* sql) {
        if (sqlite3_prepare_v2(db, sql, -1, &stmt, nullptr) != SQLITE_OK)
            throw StoreError(sqlite3_errmsg(db));
    }
    ~Stmt() { sqlite3_finalize(stmt); }
};

}  // namespace

long long write_database(const std::vector<TilingRecord>& records, const std::string& path) {
    std::remove(path.c_str());
    Db db(path, true);
    db.exec(kCreateTable);
    db.exec("BEGIN TRANSACTION");
    Stmt ins(db.handle,
             "INSERT INTO tilings VALUES (?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?,?)");
    for (const TilingRecord& r : records) {
        sqlite3_reset(ins.stmt);
        int c = 1;
        sqlite3_bind_int64(ins.stmt, c++, r.id);
        sqlite3_bind_text(ins.stmt, c++, r.symbol.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_int(ins.stmt, c++, r.complexity);
        sqlite3_bind_text(ins.stmt, c++, r.geometry.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_text(ins.stmt, c++, r.curvature.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_double(ins.stmt, c++, r.euler);
        sqlite3_bind_text(ins.stmt, c++, r.orbifold.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_text(ins.stmt, c++, r.symmetry_class.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_text(ins.stmt, c++, r.signature.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_text(ins.stmt, c++, r.tile_deg.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_text(ins.stmt, c++, r.vertex_deg.c_str(), -1, SQLITE_TRANSIENT);
        sqlite3_bind_int(ins.stmt, c++, r.tiles);
        sqlite3_bind_int(ins.stmt, c++, r.edges);
        sqlite3_bind_int(ins.stmt, c++, r.vertices);
        sqlite3_bind_int(ins.stmt, c++, r.normal ? 1 : 0);
        sqlite3_bind_int(ins.stmt, c++, r.maximal ? 1 : 0);
        sqlite3_bind_int(ins.stmt, c++, r.colorable ? 1 : 0);
        sqlite3_bind_int(ins.stmt, c++, r.orientable ? 1 : 0);
        sqlite3_bind_int(ins.stmt, c++, r.fixed_point_free ? 1 : 0);
        sqlite3_bind_int(ins.stmt, c++, r.self_dual ? 1 : 0);
        if (sqlite3_step(ins.stmt) != SQLITE_DONE) throw StoreError(sqlite3_errmsg(db.handle));
    }
    db.exec("COMMIT");
    return (long long)records.size();
}

std::vector<TilingRecord> read_database(const std::string& path) {
    Db db(path, false);
    Stmt sel(db.handle,
             "SELECT id,symbol,complexity,geometry,curvature,euler,orbifold,symmetry_class,"
             "signature,tile_deg,vertex_deg,tiles,edges,vertices,normal,maximal,colorable,"
             "orientable,fixed_point_free,self_dual FROM tilings ORDER BY id");
    std::vector<TilingRecord> out;
    auto text = [&](int col) {
        const unsigned char* t = sqlite3_column_text(sel.stmt, col);
        return t ? std::string((const char*)t) : std::string();
    };
    while (sqlite3_step(sel.stmt) == SQLITE_ROW) {
        TilingRecord r;
        int c = 0;
        r.id = sqlite3_column_int64(sel.stmt, c++);
        r.symbol = text(c++);
        r.complexity = sqlite3_column_int(sel.stmt, c++);
        r.geometry = text(c++);
        r.curvature = text(c++);
        r.euler = sqlite3_column_double(sel.stmt, c++);
        r.orbifold = text(c++);
        r.symmetry_class = text(c++);
        r.signature = text(c++);
        r.tile_deg = text(c++);
        r.vertex_deg = text(c++);
        r.tiles = sqlite3_column_int(sel.stmt, c++);
        r.edges = sqlite3_column_int(sel.stmt, c++);
        r.vertices = sqlite3_column_int(sel.stmt, c++);
        r.normal = sqlite3_column_int(sel.stmt, c++) != 0;
        r.maximal = sqlite3_column_int(sel.stmt, c++) != 0;
        r.colorable = sqlite3_column_int(sel.stmt, c++) != 0;
        r.orientable = sqlite3_column_int(sel.stmt, c++) != 0;
        r.fixed_point_free = sqlite3_column_int(sel.stmt, c++) != 0;
        r.self_dual = sqlite3_column_int(sel.stmt, c++) != 0;
        out.push_back(std::move(r));
    }
    return out;
}

namespace {

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string record_to_tsv_line(const TilingRecord& r) {
    std::ostringstream out;
    out << r.id << '\t' << r.symbol << '\t' << r.complexity << '\t' << r.geometry << '\t'
        << r.curvature << '\t' << format_real(r.euler) << '\t' << r.orbifold << '\t'
        << r.symmetry_class << '\t' << r.signature << '\t' << r.tile_deg << '\t' << r.vertex_deg
        << '\t' << r.tiles << '\t' << r.edges << '\t' << r.vertices << '\t'
        << bool_text(r.normal) << '\t' << bool_text(r.maximal) << '\t'
        << bool_text(r.colorable) << '\t' << bool_text(r.orientable) << '\t'
        << bool_text(r.fixed_point_free) << '\t' << bool_text(r.self_dual);
    return out.str();
}

void write_tsv(const std::vector<TilingRecord>& records, std::ostream& out) {
    const auto& cols = record_columns();
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (k) out << '\t';
        out << cols[k];
    }
    out << '\n';
    for (const TilingRecord& r : records) out << record_to_tsv_line(r) << '\n';
}

long long write_tsv_file(const std::vector<TilingRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw StoreError("cannot write " + path);
    write_tsv(records, out);
    return (long long)records.size();
}

std::vector<TilingRecord> read_tsv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw StoreError("cannot read " + path);
    std::string line;
    if (!std::getline(in, line)) throw StoreError(path + ": empty file");
    {
        std::ostringstream hdr;
        const auto& cols = record_columns();
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (k) hdr << '\t';
            hdr << cols[k];
        }
        if (line != hdr.str()) throw StoreError(path + ": unexpected header row");
    }
    std::vector<TilingRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t pos = 0;
        while (true) {
            std::size_t tab = line.find('\t', pos);
            f.push_back(line.substr(pos, tab == std::string::npos ? tab : tab - pos));
            if (tab == std::string::npos) break;
            pos = tab + 1;
        }
        if (f.size() != record_columns().size())
            throw StoreError(path + ": wrong field count in row");
        TilingRecord r;
        int c = 0;
        auto next = [&] { return f[c++]; };
        auto to_bool = [&](const std::string& v) {
            if (v == "true") return true;
            if (v == "false") return false;
            throw StoreError(path + ": bad boolean '" + v + "'");
        };
        r.id = std::stoll(next());
        r.symbol = next();
        r.complexity = std::stoi(next());
        r.geometry = next();
        r.curvature = next();
        r.euler = std::stod(next());
        r.orbifold = next();
        r.symmetry_class = next();
        r.signature = next();
        r.tile_deg = next();
        r.vertex_deg = next();
        r.tiles = std::stoi(next());
        r.edges = std::stoi(next());
        r.vertices = std::stoi(next());
        r.normal = to_bool(next());
        r.maximal = to_bool(next());
        r.colorable = to_bool(next());
        r.orientable = to_bool(next());
        r.fixed_point_free = to_bool(next());
        r.self_dual = to_bool(next());
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace dds
