#include "output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "json.hpp"

namespace cli {

namespace {

std::string cell_text(const Cell& c, int digits) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&c)) return format_real(*d, digits);
  return std::get<std::string>(c);
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::ordered_json to_json(const Cell& c) {
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? nlohmann::ordered_json(*d) : nullptr;
  return std::get<std::string>(c);
}

nlohmann::ordered_json to_json(const Table& t) {
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

void write_text_table(std::ostream& os, const Table& t) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width;
  for (const auto& c : t.columns) width.push_back(c.size());
  for (const auto& row : t.rows) {
    auto& out = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      out.push_back(cell_text(row[i], 10));
      width[i] = std::max(width[i], out.back().size());
    }
  }
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << "  ";
      os << std::string(width[i] - fields[i].size(), ' ') << fields[i];
    }
    os << '\n';
  };
  line(t.columns);
  for (const auto& row : cells) line(row);
}

}  // namespace

std::string format_real(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

void write(std::ostream& os, const Document& doc, Format format) {
  switch (format) {
    case Format::Csv: {
      for (std::size_t i = 0; i < doc.rows.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(doc.rows.columns[i]);
      os << '\n';
      for (const auto& row : doc.rows.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_escape(cell_text(row[i], 17));
        os << '\n';
      }
      break;
    }
    case Format::Json: {
      nlohmann::ordered_json j;
      j["schema_version"] = kSchemaVersion;
      j["command"] = doc.command;
      auto params = nlohmann::ordered_json::object();
      for (const auto& [k, v] : doc.params) params[k] = to_json(v);
      j["params"] = std::move(params);
      j["rows"] = to_json(doc.rows);
      for (const auto& [name, table] : doc.extra) j[name] = to_json(table);
      os << j.dump(2) << '\n';
      break;
    }
    case Format::Table: {
      os << doc.command;
      for (const auto& [k, v] : doc.params) os << "  " << k << '=' << cell_text(v, 10);
      os << "\n\n";
      write_text_table(os, doc.rows);
      for (const auto& [name, table] : doc.extra) {
        os << '\n' << name << '\n';
        write_text_table(os, table);
      }
      break;
    }
  }
}

}  // namespace cli
