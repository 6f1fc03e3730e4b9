#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dsfa/csv.hpp"
#include "dsfa/error.hpp"
#include "dsfa/sfa.hpp"

// Text layout, one record per line:
//   dsfa-model 1
//   degree <int>
//   input_dimension <m>
//   expanded_dimension <D>
//   retained_rank <d'>
//   components <k>
//   svd_cutoff <double>
//   degenerate_pair <0|1>
//   singular_value_count <n>
//   singular_values v... (n values)
//   mean v... (D values)
//   whitening v... (d' lines of D values)
//   projections v... (d' lines of k values)
//   delta v... (k values)

namespace dsfa {
namespace {

constexpr const char* kMagic = "dsfa-model";
constexpr int kVersion = 1;

void write_values(std::ostream& out, const char* tag, const double* v, Eigen::Index n) {
  out << tag;
  for (Eigen::Index i = 0; i < n; ++i) out << ' ' << format_double(v[i]);
  out << '\n';
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::istringstream record(const std::string& tag) {
    std::string line;
    if (!std::getline(in_, line)) throw ParseError("model: missing record '" + tag + "'", line_ + 1);
    ++line_;
    std::istringstream ss(line);
    std::string got;
    ss >> got;
    if (got != tag) throw ParseError("model: expected '" + tag + "', found '" + got + "'", line_);
    return ss;
  }

  template <typename T>
  T scalar(const std::string& tag) {
    auto ss = record(tag);
    std::string token;
    ss >> token;
    return parse<T>(token);
  }

  void values(const std::string& tag, double* dst, Eigen::Index n) {
    auto ss = record(tag);
    std::string token;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(ss >> token)) throw ParseError("model: record '" + tag + "' is short", line_);
      dst[i] = parse<double>(token);
    }
    if (ss >> token) throw ParseError("model: record '" + tag + "' has extra values", line_);
  }

 private:
  template <typename T>
  T parse(const std::string& token) {
    if constexpr (std::is_same_v<T, double>) {
      auto v = parse_double(token);
      if (!v) throw ParseError("model: bad number '" + token + "'", line_);
      return *v;
    } else {
      try {
        std::size_t used = 0;
        const long long v = std::stoll(token, &used);
        if (used != token.size() || v < 0) throw std::invalid_argument(token);
        return static_cast<T>(v);
      } catch (const std::exception&) {
        throw ParseError("model: bad integer '" + token + "'", line_);
      }
    }
  }

  std::istream& in_;
  long line_ = 0;
};

}  // namespace

void save_model(const SfaModel& model, std::ostream& out) {
  const Eigen::Index dim = model.expansion_mean.size();
  const Eigen::Index rank = model.whitening.rows();
  const Eigen::Index k = model.projections.cols();
  out << kMagic << ' ' << kVersion << '\n';
  out << "degree " << model.expansion.degree << '\n';
  out << "input_dimension " << model.expansion.input_dimension << '\n';
  out << "expanded_dimension " << dim << '\n';
  out << "retained_rank " << rank << '\n';
  out << "components " << k << '\n';
  out << "svd_cutoff " << format_double(model.svd_cutoff) << '\n';
  out << "degenerate_pair " << (model.degenerate_pair ? 1 : 0) << '\n';
  out << "singular_value_count " << model.singular_values.size() << '\n';
  write_values(out, "singular_values", model.singular_values.data(), model.singular_values.size());
  write_values(out, "mean", model.expansion_mean.data(), dim);
  for (Eigen::Index i = 0; i < rank; ++i) {
    const Eigen::VectorXd row = model.whitening.row(i);
    write_values(out, "whitening", row.data(), dim);
  }
  for (Eigen::Index i = 0; i < rank; ++i) {
    const Eigen::VectorXd row = model.projections.row(i);
    write_values(out, "projections", row.data(), k);
  }
  write_values(out, "delta", model.delta_values.data(), k);
  if (!out) throw IoError("failed to write model");
}

SfaModel load_model(std::istream& in) {
  Reader reader(in);
  {
    auto ss = reader.record(kMagic);
    int version = 0;
    ss >> version;
    if (version != kVersion) throw ParseError("model: unsupported version " + std::to_string(version), 1);
  }
  SfaModel model;
  model.expansion.degree = reader.scalar<int>("degree");
  model.expansion.input_dimension = reader.scalar<std::size_t>("input_dimension");
  const auto dim = reader.scalar<Eigen::Index>("expanded_dimension");
  const auto rank = reader.scalar<Eigen::Index>("retained_rank");
  const auto k = reader.scalar<Eigen::Index>("components");
  model.svd_cutoff = reader.scalar<double>("svd_cutoff");
  model.degenerate_pair = reader.scalar<int>("degenerate_pair") != 0;
  if ((model.expansion.degree != 1 && model.expansion.degree != 2) ||
      static_cast<std::size_t>(dim) != model.expansion.expanded_dimension() || rank > dim || k > rank)
    throw ParseError("model: inconsistent dimensions", 0);

  const auto n_sv = reader.scalar<Eigen::Index>("singular_value_count");
  model.singular_values.resize(n_sv);
  reader.values("singular_values", model.singular_values.data(), n_sv);
  model.expansion_mean.resize(dim);
  reader.values("mean", model.expansion_mean.data(), dim);

  model.whitening.resize(rank, dim);
  Eigen::VectorXd row(dim);
  for (Eigen::Index i = 0; i < rank; ++i) {
    reader.values("whitening", row.data(), dim);
    model.whitening.row(i) = row.transpose();
  }
  model.projections.resize(rank, k);
  row.resize(k);
  for (Eigen::Index i = 0; i < rank; ++i) {
    reader.values("projections", row.data(), k);
    model.projections.row(i) = row.transpose();
  }
  model.delta_values.resize(k);
  reader.values("delta", model.delta_values.data(), k);
  return model;
}

void save_model(const SfaModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  save_model(model, out);
}

SfaModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return load_model(in);
}

}  // namespace dsfa
