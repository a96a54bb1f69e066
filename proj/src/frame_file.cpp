#include "pairframe/frame_file.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pairframe/error.hpp"

namespace pairframe {
namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

CVector complex_row(const json& j, const char* what) {
  if (!j.is_array()) parse_error(std::string(what) + " must be an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

OperatorFamily family_from_json(const json& obj, Eigen::Index dim, const char* where) {
  const bool has_vectors = obj.contains("vectors");
  const bool has_operators = obj.contains("operators");
  if (has_vectors == has_operators) {
    parse_error(std::string(where) + " needs exactly one of \"vectors\" or \"operators\"");
  }

  std::vector<CMatrix> members;
  if (has_vectors) {
    const json& vs = obj.at("vectors");
    if (!vs.is_array() || vs.empty()) parse_error(std::string(where) + ".vectors must be a non-empty array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const CVector v = complex_row(vs[i], "vector");
      if (v.size() != dim) {
        throw Error(ErrorCode::DimensionMismatch, std::string(where) + " vector " + std::to_string(i) + " has length " +
                                                      std::to_string(v.size()) + ", declared dim " +
                                                      std::to_string(dim));
      }
      members.emplace_back(v.adjoint());
    }
  } else {
    const json& ops = obj.at("operators");
    if (!ops.is_array() || ops.empty()) parse_error(std::string(where) + ".operators must be a non-empty array");
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const json& rows = ops[i];
      if (!rows.is_array() || rows.empty()) parse_error("operator " + std::to_string(i) + " must have rows");
      CMatrix m(static_cast<Eigen::Index>(rows.size()), dim);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const CVector row = complex_row(rows[r], "operator row");
        if (row.size() != dim) {
          throw Error(ErrorCode::DimensionMismatch, std::string(where) + " operator " + std::to_string(i) + " row " +
                                                        std::to_string(r) + " has width " +
                                                        std::to_string(row.size()) + ", declared dim " +
                                                        std::to_string(dim));
        }
        m.row(static_cast<Eigen::Index>(r)) = row.transpose();
      }
      members.push_back(std::move(m));
    }
  }
  return OperatorFamily(dim, std::move(members));
}

json family_to_json(const OperatorFamily& family) {
  json out = json::object();
  if (family.is_vector_family()) {
    json vs = json::array();
    for (const CMatrix& m : family.members()) {
      json v = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) v.push_back(complex_to_json(std::conj(m(0, j))));
      vs.push_back(std::move(v));
    }
    out["vectors"] = std::move(vs);
  } else {
    json ops = json::array();
    for (const CMatrix& m : family.members()) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
      }
      ops.push_back(std::move(rows));
    }
    out["operators"] = std::move(ops);
  }
  return out;
}

}  // namespace

// adding 0.0 turns -0.0 into 0.0
json complex_to_json(Complex z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    parse_error("complex numbers are encoded as [re, im]");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) parse_error("complex entry is not finite");
  return z;
}

PairSystem FrameFile::pair_system() const {
  WeightSequence m = weights ? *weights : WeightSequence::ones(lambda.size());
  return PairSystem(std::move(m), gamma ? *gamma : lambda, lambda);
}

FrameFile parse_frame_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("frame file must be a JSON object");

  try {
    if (!doc.contains("format_version") || doc["format_version"] != std::string(kFormatVersion)) {
      parse_error("format_version must be \"1\"");
    }
    if (!doc.contains("dim") || !doc["dim"].is_number_integer() || doc["dim"].get<long long>() < 1) {
      parse_error("dim must be a positive integer");
    }
    const auto dim = static_cast<Eigen::Index>(doc["dim"].get<long long>());

    FrameFile file{family_from_json(doc, dim, "frame"), std::nullopt, std::nullopt};

    if (doc.contains("weights")) {
      const CVector w = complex_row(doc["weights"], "weights");
      if (static_cast<std::size_t>(w.size()) != file.lambda.size()) {
        throw Error(ErrorCode::DimensionMismatch, "weights has " + std::to_string(w.size()) + " entries for " +
                                                      std::to_string(file.lambda.size()) + " members");
      }
      file.weights = WeightSequence{{w.data(), w.data() + w.size()}};
    }
    if (doc.contains("gamma")) {
      if (!doc["gamma"].is_object()) parse_error("gamma must be an object");
      file.gamma = family_from_json(doc["gamma"], dim, "gamma");
      // shape agreement with lambda is part of the file contract
      (void)file.pair_system();
    }
    return file;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::DimensionMismatch || e.code() == ErrorCode::Parse) throw;
    parse_error(e.what());
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

FrameFile read_frame_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_frame_file(ss.str());
}

json to_json(const FrameFile& file) {
  json out = json::object();
  out["format_version"] = std::string(kFormatVersion);
  out["dim"] = file.dim();
  const json fam = family_to_json(file.lambda);
  for (const auto& [k, v] : fam.items()) out[k] = v;
  if (file.weights) {
    json w = json::array();
    for (const Complex& z : file.weights->weights) w.push_back(complex_to_json(z));
    out["weights"] = std::move(w);
  }
  if (file.gamma) out["gamma"] = family_to_json(*file.gamma);
  return out;
}

namespace {

// One matrix row or vector per line; numbers use nlohmann's shortest
// round-trip formatting.
void write_row_list(std::ostringstream& os, const json& rows, const std::string& indent) {
  os << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << indent << "  " << rows[i].dump() << (i + 1 < rows.size() ? ",\n" : "\n");
  }
  os << indent << "]";
}

void write_family(std::ostringstream& os, const json& fam, const std::string& indent) {
  if (fam.contains("vectors")) {
    os << indent << "\"vectors\": ";
    write_row_list(os, fam["vectors"], indent);
    return;
  }
  os << indent << "\"operators\": [\n";
  const json& ops = fam["operators"];
  for (std::size_t i = 0; i < ops.size(); ++i) {
    os << indent << "  ";
    write_row_list(os, ops[i], indent + "  ");
    os << (i + 1 < ops.size() ? ",\n" : "\n");
  }
  os << indent << "]";
}

}  // namespace

std::string serialize_frame_file(const FrameFile& file) {
  std::ostringstream os;
  os << "{\n  \"format_version\": \"" << kFormatVersion << "\",\n";
  os << "  \"dim\": " << file.dim() << ",\n";
  write_family(os, family_to_json(file.lambda), "  ");
  if (file.weights) {
    json w = json::array();
    for (const Complex& z : file.weights->weights) w.push_back(complex_to_json(z));
    os << ",\n  \"weights\": " << w.dump();
  }
  if (file.gamma) {
    os << ",\n  \"gamma\": {\n";
    write_family(os, family_to_json(*file.gamma), "    ");
    os << "\n  }";
  }
  os << "\n}\n";
  return os.str();
}

CVector parse_signal(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_error(std::string("invalid signal JSON: ") + e.what());
  }
  if (!doc.is_array() || doc.empty()) parse_error("signal must be a non-empty array of [re, im] pairs");
  return complex_row(doc, "signal");
}

}  // namespace pairframe
