#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dds/record.hpp"

namespace dds {

class QueryError : public std::runtime_error {
public:
    QueryError(std::size_t pos, const std::string& what)
        : std::runtime_error("query error at position " + std::to_string(pos) + ": " + what),
          position(pos) {}
    std::size_t position;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

// Comparison/boolean fragment over the tilings schema: "and" and "or"
// bind equally and associate left; "not" binds tighter.
struct QueryExpr {
    enum class Kind { And, Or, Not, Compare };
    Kind kind = Kind::Compare;
    std::unique_ptr<QueryExpr> lhs, rhs;  // And/Or use both, Not uses lhs

    std::string column;
    CompareOp op = CompareOp::Eq;
    bool literal_is_string = false;
    std::string string_value;
    long long int_value = 0;
};

QueryExpr parse_query(const std::string& text);

bool eval_query_on(const QueryExpr& q, const TilingRecord& r);

// Matching rows in id order.
std::vector<TilingRecord> eval_query(const QueryExpr& q, const std::vector<TilingRecord>& rows);

}  // namespace dds
