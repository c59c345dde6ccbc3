#include "adann/container.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

static_assert(std::endian::native == std::endian::little,
              "container I/O assumes a little-endian host");

namespace adann {

namespace {
constexpr char kMagic[6] = {'A', 'D', 'A', 'N', 'N', '1'};
constexpr std::uint32_t kVersion = 1;
} // namespace

void Container::add(const std::string& name, std::vector<long> shape,
                    std::vector<double> data) {
  long count = 1;
  for (long s : shape) count *= s;
  if (count != static_cast<long>(data.size()))
    throw std::invalid_argument("tensor data does not match shape: " + name);
  if (!tensors_.count(name)) order_.push_back(name);
  tensors_[name] = Tensor{std::move(shape), std::move(data)};
}

void Container::add_matrix(const std::string& name, const Matrix& m) {
  std::vector<double> data(static_cast<std::size_t>(m.size()));
  std::size_t k = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) data[k++] = m(i, j);
  add(name, {m.rows(), m.cols()}, std::move(data));
}

void Container::add_samples(const std::string& name, const Matrix& columns) {
  // Column-major (d x n) memory already reads as a row-major (n x d) table.
  std::vector<double> data(columns.data(), columns.data() + columns.size());
  add(name, {columns.cols(), columns.rows()}, std::move(data));
}

bool Container::has(const std::string& name) const { return tensors_.count(name) > 0; }

const Container::Tensor& Container::tensor(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw std::out_of_range("no tensor named " + name);
  return it->second;
}

Matrix Container::matrix(const std::string& name) const {
  const Tensor& t = tensor(name);
  if (t.shape.size() != 2) throw std::runtime_error("tensor is not a matrix: " + name);
  Matrix m(t.shape[0], t.shape[1]);
  std::size_t k = 0;
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) m(i, j) = t.data[k++];
  return m;
}

Matrix Container::samples(const std::string& name) const {
  const Tensor& t = tensor(name);
  if (t.shape.size() != 2) throw std::runtime_error("tensor is not 2D: " + name);
  Matrix m(t.shape[1], t.shape[0]); // d x n from [n, d]
  std::memcpy(m.data(), t.data.data(), t.data.size() * sizeof(double));
  return m;
}

void Container::set_meta(const std::string& key, const std::string& value) {
  meta_strings_[key] = value;
}
void Container::set_meta(const std::string& key, double value) {
  meta_numbers_[key] = value;
}
void Container::set_meta_int(const std::string& key, long long value) {
  meta_ints_[key] = value;
}

std::string Container::meta_string(const std::string& key) const {
  auto it = meta_strings_.find(key);
  if (it == meta_strings_.end()) throw std::out_of_range("no meta key " + key);
  return it->second;
}

double Container::meta_number(const std::string& key) const {
  if (auto it = meta_numbers_.find(key); it != meta_numbers_.end()) return it->second;
  if (auto it = meta_ints_.find(key); it != meta_ints_.end())
    return static_cast<double>(it->second);
  throw std::out_of_range("no meta key " + key);
}

long long Container::meta_int(const std::string& key) const {
  auto it = meta_ints_.find(key);
  if (it == meta_ints_.end()) throw std::out_of_range("no integer meta key " + key);
  return it->second;
}

bool Container::has_meta(const std::string& key) const {
  return meta_strings_.count(key) || meta_numbers_.count(key) || meta_ints_.count(key);
}

void Container::save(const std::filesystem::path& path) const {
  nlohmann::json header;
  header["tensors"] = nlohmann::json::array();
  for (const auto& name : order_) {
    const Tensor& t = tensors_.at(name);
    nlohmann::json entry;
    entry["name"] = name;
    entry["shape"] = t.shape;
    entry["dtype"] = "f64";
    header["tensors"].push_back(entry);
  }
  nlohmann::json meta = nlohmann::json::object();
  for (const auto& [k, v] : meta_strings_) meta[k] = v;
  for (const auto& [k, v] : meta_numbers_) meta[k] = v;
  for (const auto& [k, v] : meta_ints_) meta[k] = v;
  header["meta"] = meta;

  std::string json_bytes = header.dump();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out.write(kMagic, sizeof(kMagic));
  std::uint32_t version = kVersion;
  out.write(reinterpret_cast<const char*>(&version), sizeof(version));
  std::uint64_t json_len = json_bytes.size();
  out.write(reinterpret_cast<const char*>(&json_len), sizeof(json_len));
  out.write(json_bytes.data(), static_cast<std::streamsize>(json_bytes.size()));
  for (const auto& name : order_) {
    const Tensor& t = tensors_.at(name);
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

Container Container::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path.string());

  char magic[6];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
    throw std::runtime_error("bad magic: not an ADANN1 container");
  std::uint32_t version = 0;
  in.read(reinterpret_cast<char*>(&version), sizeof(version));
  if (!in || version != kVersion)
    throw std::runtime_error("unsupported container version");
  std::uint64_t json_len = 0;
  in.read(reinterpret_cast<char*>(&json_len), sizeof(json_len));
  if (!in) throw std::runtime_error("truncated header");
  std::string json_bytes(json_len, '\0');
  in.read(json_bytes.data(), static_cast<std::streamsize>(json_len));
  if (!in) throw std::runtime_error("truncated header");

  nlohmann::json header = nlohmann::json::parse(json_bytes);
  Container c;
  for (const auto& entry : header.at("tensors")) {
    std::string name = entry.at("name").get<std::string>();
    std::vector<long> shape = entry.at("shape").get<std::vector<long>>();
    long count = 1;
    for (long s : shape) count *= s;
    std::vector<double> data(static_cast<std::size_t>(count));
    in.read(reinterpret_cast<char*>(data.data()),
            static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!in) throw std::runtime_error("truncated payload for tensor " + name);
    c.add(name, std::move(shape), std::move(data));
  }
  for (const auto& [key, value] : header.at("meta").items()) {
    if (value.is_string())
      c.meta_strings_[key] = value.get<std::string>();
    else if (value.is_number_integer())
      c.meta_ints_[key] = value.get<long long>();
    else
      c.meta_numbers_[key] = value.get<double>();
  }
  return c;
}

} // namespace adann
