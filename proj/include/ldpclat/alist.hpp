#pragma once
// alist parity-check matrix files.  Binary matrices use the common layout
//
//   n m
//   max_col_degree max_row_degree
//   <n column degrees>
//   <m row degrees>
//   n lines of 1-based row indices per column, zero-padded
//   m lines of 1-based column indices per row, zero-padded
//
// Matrices with non-unit entries or a modulus other than 2 use an extended
// variant: a leading "modulus q" line (q = 0 for plain integers) and
// "index:value" entries in the degree lists.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "sparse.hpp"

namespace ldpclat {

inline std::string alist_to_string(const SparseIntMatrix& a) {
    bool extended = a.modulus != 2 || !a.is_binary();
    std::ostringstream out;
    if (extended) out << "modulus " << a.modulus << "\n";
    out << a.cols << " " << a.rows << "\n";
    std::size_t maxc = 0, maxr = 0;
    for (const auto& s : a.col_support) maxc = std::max(maxc, s.size());
    for (const auto& s : a.row_support) maxr = std::max(maxr, s.size());
    out << maxc << " " << maxr << "\n";
    for (int j = 0; j < a.cols; ++j) out << a.col_support[j].size() << (j + 1 < a.cols ? " " : "");
    out << "\n";
    for (int i = 0; i < a.rows; ++i) out << a.row_support[i].size() << (i + 1 < a.rows ? " " : "");
    out << "\n";
    auto emit = [&](const std::vector<int>& idx, const std::vector<std::int64_t>& val, std::size_t width) {
        for (std::size_t k = 0; k < width; ++k) {
            if (k) out << " ";
            if (k < idx.size()) {
                out << idx[k] + 1;
                if (extended) out << ":" << val[k];
            } else {
                out << 0;
            }
        }
        out << "\n";
    };
    for (int j = 0; j < a.cols; ++j) emit(a.col_support[j], a.col_values[j], maxc);
    for (int i = 0; i < a.rows; ++i) emit(a.row_support[i], a.row_values[i], maxr);
    return out.str();
}

inline SparseIntMatrix alist_from_stream(std::istream& in, const std::string& name = "<stream>") {
    auto fail = [&](const std::string& what) -> void { throw IoError(name + ": " + what); };
    std::string tok;
    if (!(in >> tok)) fail("empty alist");
    std::int64_t modulus = 2;
    bool extended = false;
    if (tok == "modulus") {
        extended = true;
        if (!(in >> modulus) || modulus < 0) fail("bad modulus line");
        if (!(in >> tok)) fail("missing dimensions");
    }
    int n = 0, m = 0;
    try {
        n = std::stoi(tok);
    } catch (...) {
        fail("bad column count");
    }
    if (!(in >> m) || n < 0 || m < 0) fail("bad dimensions");
    std::size_t maxc = 0, maxr = 0;
    if (!(in >> maxc >> maxr)) fail("bad degree bounds");
    std::vector<std::size_t> cdeg(n), rdeg(m);
    for (int j = 0; j < n; ++j)
        if (!(in >> cdeg[j])) fail("bad column degree list");
    for (int i = 0; i < m; ++i)
        if (!(in >> rdeg[i])) fail("bad row degree list");
    // entry lists are one line per node; zero-padded and unpadded files both parse
    auto next_line_tokens = [&]() {
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            std::vector<std::string> toks;
            std::string t;
            while (ls >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        fail("truncated entry list");
        return std::vector<std::string>{};
    };
    auto parse_entry = [&](const std::string& e, int& index, std::int64_t& value) {
        auto colon = e.find(':');
        try {
            if (colon == std::string::npos) {
                index = std::stoi(e);
                value = 1;
            } else {
                index = std::stoi(e.substr(0, colon));
                value = std::stoll(e.substr(colon + 1));
            }
        } catch (...) {
            fail("bad entry '" + e + "'");
        }
    };
    std::vector<std::tuple<int, int, std::int64_t>> tr;
    for (int j = 0; j < n; ++j) {
        if (maxc == 0) continue;  // fully empty column section has no lines
        std::size_t seen = 0;
        for (const auto& tok2 : next_line_tokens()) {
            int idx;
            std::int64_t val;
            parse_entry(tok2, idx, val);
            if (idx == 0) continue;
            if (idx < 1 || idx > m) fail("row index out of range in column list");
            tr.emplace_back(idx - 1, j, val);
            ++seen;
        }
        if (seen != cdeg[j]) fail("column degree mismatch");
    }
    // row lists are redundant; consume and cross-check supports
    std::vector<std::vector<int>> row_seen(m);
    for (int i = 0; i < m; ++i) {
        if (maxr == 0) continue;
        std::size_t seen = 0;
        for (const auto& tok2 : next_line_tokens()) {
            int idx;
            std::int64_t val;
            parse_entry(tok2, idx, val);
            if (idx == 0) continue;
            if (idx < 1 || idx > n) fail("column index out of range in row list");
            row_seen[i].push_back(idx - 1);
            ++seen;
        }
        if (seen != rdeg[i]) fail("row degree mismatch");
    }
    SparseIntMatrix a;
    try {
        a = SparseIntMatrix::from_triplets(m, n, tr, extended ? modulus : 2);
    } catch (const std::exception& e) {
        fail(e.what());
    }
    for (int i = 0; i < m; ++i) {
        auto sorted = row_seen[i];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != a.row_support[i]) fail("row/column lists disagree");
    }
    return a;
}

inline SparseIntMatrix alist_from_string(const std::string& text, const std::string& name = "<string>") {
    std::istringstream in(text);
    return alist_from_stream(in, name);
}

inline void write_alist(const std::string& path, const SparseIntMatrix& a) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << alist_to_string(a);
    if (!out) throw IoError("write failed: " + path);
}

inline SparseIntMatrix read_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    return alist_from_stream(in, path);
}

}  // namespace ldpclat
