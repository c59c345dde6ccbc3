#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "adann/types.hpp"

namespace adann {

/// Self-describing binary container ("ADANN1"): magic, version, a JSON
/// tensor directory, then raw little-endian binary64 payloads in directory
/// order. Save/load round-trips are bitwise identities.
class Container {
 public:
  struct Tensor {
    std::vector<long> shape;
    std::vector<double> data; // row-major in file order
  };

  /// Adds a named tensor; data is taken in file (row-major) order.
  void add(const std::string& name, std::vector<long> shape, std::vector<double> data);
  /// Adds an Eigen matrix as shape [rows, cols] with row-major payload.
  void add_matrix(const std::string& name, const Matrix& m);
  /// Adds sample columns as shape [cols, rows]: column k becomes row k.
  void add_samples(const std::string& name, const Matrix& columns);

  bool has(const std::string& name) const;
  const Tensor& tensor(const std::string& name) const;
  Matrix matrix(const std::string& name) const;
  /// Reads a [n, d] tensor back into d x n sample columns.
  Matrix samples(const std::string& name) const;

  std::vector<std::string> names() const { return order_; }

  /// Free-form metadata, serialized as a JSON object (string keys/values
  /// plus numbers).
  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value);
  void set_meta_int(const std::string& key, long long value);
  std::string meta_string(const std::string& key) const;
  double meta_number(const std::string& key) const;
  long long meta_int(const std::string& key) const;
  bool has_meta(const std::string& key) const;

  void save(const std::filesystem::path& path) const;
  static Container load(const std::filesystem::path& path);

 private:
  std::vector<std::string> order_;
  std::map<std::string, Tensor> tensors_;
  std::map<std::string, std::string> meta_strings_;
  std::map<std::string, double> meta_numbers_;
  std::map<std::string, long long> meta_ints_;
};

} // namespace adann
