#include "efx/document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace efx {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed document: ") + e.what());
  }
}

std::size_t positive_count(const json& doc, const char* key) {
  if (!doc.contains(key)) throw InputError(std::string("missing key \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw InputError(std::string("\"") + key + "\" must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

Matrix read_matrix(const json& rows, std::size_t expect_rows, std::size_t expect_cols,
                   const std::string& key) {
  if (!rows.is_array()) throw InputError("\"" + key + "\" must be an array of rows");
  if (expect_rows && rows.size() != expect_rows) {
    throw InputError("\"" + key + "\" has " + std::to_string(rows.size()) +
                     " rows, expected " + std::to_string(expect_rows));
  }
  const std::size_t m = rows.size();
  if (m == 0) return {};
  const std::size_t n = expect_cols ? expect_cols : rows.at(0).size();
  Matrix out(m, n);
  for (std::size_t k = 0; k < m; ++k) {
    const json& row = rows.at(k);
    if (!row.is_array()) throw InputError("row is not an array", k + 1);
    if (row.size() != n) {
      throw InputError("row has " + std::to_string(row.size()) + " entries, expected " +
                           std::to_string(n),
                       k + 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!row.at(i).is_number()) throw InputError("entry is not a number", k + 1, i + 1);
      out(k, i) = row.at(i).get<double>();
    }
  }
  return out;
}

json matrix_json(const Matrix& mat) {
  json rows = json::array();
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    json row = json::array();
    for (double v : mat.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) throw InputError("instance document must be an object");
  const std::size_t m = positive_count(doc, "m");
  const std::size_t n = positive_count(doc, "n");
  if (!doc.contains("values")) throw InputError("missing key \"values\"");
  if (m < 1) throw InputError("\"m\" must be at least 1");
  if (n < 2) throw InputError("\"n\" must be at least 2");
  Matrix values = read_matrix(doc.at("values"), m, n, "values");
  return Instance(std::move(values), false);
}

std::string instance_document(const Instance& inst) {
  json doc;
  doc["m"] = inst.items();
  doc["n"] = inst.agents();
  doc["values"] = matrix_json(inst.values());
  return doc.dump();
}

Allocation parse_allocation(std::string_view text, std::size_t agents) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains("owner")) throw InputError("missing key \"owner\"");
  const json& owner = doc.at("owner");
  if (!owner.is_array()) throw InputError("\"owner\" must be an array");
  std::vector<std::size_t> out(owner.size());
  for (std::size_t k = 0; k < owner.size(); ++k) {
    const json& a = owner.at(k);
    if (!a.is_number_integer() || a.get<long long>() < 1 ||
        a.get<std::size_t>() > agents) {
      throw InputError("owner must be an agent id in 1.." + std::to_string(agents), k + 1);
    }
    out[k] = a.get<std::size_t>() - 1;
  }
  return Allocation(std::move(out), agents);
}

std::string allocation_document(const Allocation& alloc) {
  json owner = json::array();
  for (std::size_t a : alloc.owners()) owner.push_back(a + 1);
  return json{{"owner", owner}}.dump();
}

Matrix parse_matrix_field(std::string_view text, const std::string& key) {
  const json doc = parse_json(text);
  if (!doc.is_object() || !doc.contains(key)) return {};
  return read_matrix(doc.at(key), 0, 0, key);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace efx
