#pragma once

// Text encodings shared by the CLI and reports:
//   field     `p` or `p^k`
//   scalar    decimal code
//   matrix    rows joined by `;`, entries by `,`    e.g. `0,1;0,0`
//   subspace  RREF basis in matrix format, `-` for the zero subspace

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "caps.hpp"
#include "error.hpp"
#include "field.hpp"
#include "matrix.hpp"
#include "subspace.hpp"

namespace matsemi::text {

  inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t                   start = 0;
    while (true) {
      auto const pos = s.find(sep, start);
      out.push_back(s.substr(start, pos - start));
      if (pos == std::string_view::npos) {
        break;
      }
      start = pos + 1;
    }
    return out;
  }

  inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  }

  inline int parse_int(std::string_view s) {
    s       = trim(s);
    int  v  = 0;
    auto rc = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || rc.ec != std::errc{} || rc.ptr != s.data() + s.size()) {
      fail(ErrorKind::ParseError, "not an integer: '" + std::string(s) + "'");
    }
    return v;
  }

  inline Field parse_field(std::string_view s, Caps const& caps = {}) {
    auto parts = split(trim(s), '^');
    if (parts.size() > 2) {
      fail(ErrorKind::ParseError, "bad field '" + std::string(s) + "'");
    }
    int const p = parse_int(parts[0]);
    int const k = parts.size() == 2 ? parse_int(parts[1]) : 1;
    return Field::make(p, k, caps.max_q);
  }

  inline std::string format(Matrix const& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
      if (i > 0) {
        out += ';';
      }
      for (int j = 0; j < m.cols(); ++j) {
        if (j > 0) {
          out += ',';
        }
        out += std::to_string(m(i, j));
      }
    }
    return out;
  }

  inline std::string format(Vector const& v) {
    std::string out;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (j > 0) {
        out += ',';
      }
      out += std::to_string(v[j]);
    }
    return out;
  }

  inline std::string format(Subspace const& u) {
    return u.dim() == 0 ? std::string("-") : format(u.as_matrix());
  }

  inline Matrix parse_matrix(Field const& field, std::string_view s) {
    auto const          rows = split(trim(s), ';');
    int                 cols = -1;
    std::vector<Scalar> entries;
    for (auto row : rows) {
      auto const cells = split(row, ',');
      if (cols < 0) {
        cols = static_cast<int>(cells.size());
      } else if (cols != static_cast<int>(cells.size())) {
        fail(ErrorKind::ParseError, "ragged matrix '" + std::string(s) + "'");
      }
      for (auto c : cells) {
        int const v = parse_int(c);
        if (!field.valid(v)) {
          fail(ErrorKind::ParseError,
               "entry " + std::to_string(v) + " not in GF(" + field.to_string()
                   + ")");
        }
        entries.push_back(static_cast<Scalar>(v));
      }
    }
    return Matrix(field, static_cast<int>(rows.size()), cols, std::move(entries));
  }

  inline Subspace parse_subspace(Field const& field, int n, std::string_view s) {
    s = trim(s);
    if (s == "-") {
      return Subspace::zero(field, n);
    }
    Matrix const m = parse_matrix(field, s);
    if (m.cols() != n) {
      fail(ErrorKind::AmbientMismatch,
           "subspace basis has " + std::to_string(m.cols())
               + " coordinates, ambient is " + std::to_string(n));
    }
    std::vector<Vector> rows;
    for (int i = 0; i < m.rows(); ++i) {
      rows.push_back(m.row(i));
    }
    return Subspace::span(field, n, rows);
  }

  //! Whitespace-separated matrices.
  inline std::vector<Matrix> parse_matrix_list(Field const& field,
                                               std::string_view s) {
    std::vector<Matrix> out;
    std::size_t         i = 0;
    while (i < s.size()) {
      while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n')) {
        ++i;
      }
      std::size_t j = i;
      while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\n') {
        ++j;
      }
      if (j > i) {
        out.push_back(parse_matrix(field, s.substr(i, j - i)));
      }
      i = j;
    }
    return out;
  }

  inline std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    for (auto part : split(trim(s), ',')) {
      out.push_back(parse_int(part));
    }
    return out;
  }

}  // namespace matsemi::text
