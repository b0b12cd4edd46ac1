#include "permlab/matrix_io.hpp"

#include <fstream>

#include <json.hpp>

#include "permlab/errors.hpp"

namespace permlab {

std::string matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> re, im;
  re.reserve(m.rows() * m.cols());
  im.reserve(m.rows() * m.cols());
  for (const Complex& z : m.data()) {
    re.push_back(z.real());
    im.push_back(z.imag());
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j.dump();
}

ComplexMatrix matrix_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw invalid_selection_error(std::string("matrix JSON parse failure: ") + e.what());
  }
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("re") || !j.contains("im")) {
    throw invalid_selection_error("matrix JSON requires rows, cols, re, im");
  }
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const auto re = j["re"].get<std::vector<double>>();
  const auto im = j["im"].get<std::vector<double>>();
  if (re.size() != rows * cols || im.size() != rows * cols) {
    throw invalid_selection_error("matrix JSON entry arrays must have rows*cols elements");
  }
  std::vector<Complex> entries(rows * cols);
  for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = Complex{re[i], im[i]};
  return ComplexMatrix(rows, cols, std::move(entries));
}

void save_matrix_json(const ComplexMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw invalid_selection_error("cannot open matrix file for writing: " + path);
  out << matrix_to_json(m) << '\n';
}

ComplexMatrix load_matrix_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_selection_error("cannot open matrix file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return matrix_from_json(text);
}

}  // namespace permlab
