#pragma once
// JSON serialization for every interchange type, with error messages that
// point at the offending field, plus the input digest used in CLI reports.
//
// Formats:
//   polynomial   {"n": int, "terms": [{"word": [1-based ints], "coeff": x}]}
//   poly tuple   [polynomial, ...]            (a single object is accepted as k = 1)
//   operators    {"dim": d, "blocks": [[matrix (n_1 of them)], ...]}
//                matrix = row-major flat list of [re, im] pairs
//   series       {"k": int, "n": [...], "coeff_dim": d, "terms":
//                   [{"words": [[...], ...], "block": row-major [re, im] pairs}]}
//   finite op    {"dim": d, "entries": [[re, im], ...]} (dense row-major) or
//                {"dim": d, "triplets": [[row, col, re, im], ...]} (0-based)
//   pair expr    {"terms": [{"alpha": [[...], ...], "beta": [[...], ...],
//                            "c": [re, im]}]}

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "ncpolydom/berezin.hpp"
#include "ncpolydom/optuple.hpp"
#include "ncpolydom/poly.hpp"
#include "ncpolydom/series.hpp"

namespace ncpolydom {

using json = nlohmann::json;

json word_to_json(const Word& w);
Word word_from_json(const json& j, const std::string& at);

json word_tuple_to_json(const WordTuple& t);
WordTuple word_tuple_from_json(const json& j, const std::string& at);

json poly_to_json(const NcPolynomial& q);
NcPolynomial poly_from_json(const json& j, const std::string& at);

json poly_tuple_to_json(const PolyTuple& q);
PolyTuple poly_tuple_from_json(const json& j, const std::string& at);

json operator_tuple_to_json(const OperatorTuple& x);
OperatorTuple operator_tuple_from_json(const json& j, const std::string& at);

json series_to_json(const FormalSeries& f);
FormalSeries series_from_json(const json& j, const std::string& at);

json complex_to_json(cd v);
cd complex_from_json(const json& j, const std::string& at);

json matrix_dense_json(const Mat& m);                    // {"dim", "entries"} (square)
json matrix_rect_json(const Mat& m);                     // {"rows", "cols", "entries"}
json sparse_triplets_json(const SpMat& m);               // {"dim", "triplets"}

WordPairExpr word_pair_expr_from_json(const json& j, int k, const std::string& at);

// FNV-1a 64-bit digest of a byte string, as fixed-width hex.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace ncpolydom
