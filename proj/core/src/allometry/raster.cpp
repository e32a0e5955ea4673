#include "rheo/allometry/raster.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "rheo/error.hpp"
#include "rheo/format.hpp"

namespace rheo {

namespace {

constexpr long long kMaxPixels = 1LL << 26;

// Whitespace tokenizer; '#' starts a comment that runs to end of line.
class Tokenizer {
 public:
  Tokenizer(std::istream& in, bool comments) : in_(in), comments_(comments) {}

  bool next(std::string& tok) {
    tok.clear();
    int c;
    while ((c = in_.get()) != EOF) {
      if (comments_ && c == '#') {
        while ((c = in_.get()) != EOF && c != '\n') {
        }
        if (!tok.empty()) return true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!tok.empty()) return true;
        continue;
      }
      tok.push_back(static_cast<char>(c));
    }
    return !tok.empty();
  }

 private:
  std::istream& in_;
  bool comments_;
};

int parse_dimension(const std::string& tok, const std::string& source, const char* what) {
  double v = 0.0;
  if (!parse_real(tok, v) || v != std::floor(v) || v < 1 || v > 1e8) {
    throw_input_format(source, std::string("bad ") + what + " '" + tok + "'");
  }
  return static_cast<int>(v);
}

void check_size(int w, int h, const std::string& source) {
  if (static_cast<long long>(w) * h > kMaxPixels) {
    throw_input_format(source, "raster too large");
  }
}

}  // namespace

RasterField RasterField::filled(int width, int height, double value) {
  if (width < 1 || height < 1) throw_invalid_argument("raster", "dimensions must be >= 1");
  RasterField r;
  r.width = width;
  r.height = height;
  r.values.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), value);
  return r;
}

double RasterField::sample(double u, double v) const {
  auto axis = [](double t, int n, int& i0, int& i1, double& f) {
    double x = std::clamp(t * n - 0.5, 0.0, static_cast<double>(n - 1));
    if (!std::isfinite(x)) x = 0.0;
    i0 = static_cast<int>(std::floor(x));
    i1 = std::min(i0 + 1, n - 1);
    f = x - i0;
  };
  int i0, i1, j0, j1;
  double fx, fy;
  axis(u, width, i0, i1, fx);
  axis(v, height, j0, j1, fy);
  double a = at(i0, j0), b = at(i1, j0), c = at(i0, j1), d = at(i1, j1);
  double lo = fx == 0.0 ? a : a + (b - a) * fx;
  double hi = fx == 0.0 ? c : c + (d - c) * fx;
  return fy == 0.0 ? lo : lo + (hi - lo) * fy;
}

double RasterField::max_value() const { return *std::max_element(values.begin(), values.end()); }
double RasterField::min_value() const { return *std::min_element(values.begin(), values.end()); }

void validate(const RasterField& raster, const std::string& path) {
  if (raster.width < 1 || raster.height < 1) throw_validation(path, "dimensions must be >= 1");
  if (raster.values.size() !=
      static_cast<std::size_t>(raster.width) * static_cast<std::size_t>(raster.height)) {
    throw_validation(path, "value count does not match width*height");
  }
  for (double v : raster.values) {
    if (!std::isfinite(v)) throw_validation(path, "non-finite value");
  }
}

RasterField read_pgm(std::istream& in, const std::string& source) {
  Tokenizer tk(in, true);
  std::string tok;
  if (!tk.next(tok) || tok != "P2") throw_input_format(source, "missing P2 magic");
  if (!tk.next(tok)) throw_input_format(source, "missing width");
  int w = parse_dimension(tok, source, "width");
  if (!tk.next(tok)) throw_input_format(source, "missing height");
  int h = parse_dimension(tok, source, "height");
  check_size(w, h, source);
  if (!tk.next(tok)) throw_input_format(source, "missing maxval");
  int maxval = parse_dimension(tok, source, "maxval");
  if (maxval > 65535) throw_input_format(source, "maxval above 65535");
  RasterField r = RasterField::filled(w, h, 0.0);
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (!tk.next(tok)) throw_input_format(source, "truncated pixel data");
    double px = 0.0;
    if (!parse_real(tok, px) || px != std::floor(px) || px < 0 || px > maxval) {
      throw_input_format(source, "bad pixel '" + tok + "'");
    }
    r.values[k] = px / maxval;
  }
  if (tk.next(tok)) throw_input_format(source, "trailing data");
  return r;
}

RasterField read_rast(std::istream& in, const std::string& source) {
  Tokenizer tk(in, false);
  std::string tok;
  if (!tk.next(tok) || tok != "RAST") throw_input_format(source, "missing RAST magic");
  if (!tk.next(tok)) throw_input_format(source, "missing width");
  int w = parse_dimension(tok, source, "width");
  if (!tk.next(tok)) throw_input_format(source, "missing height");
  int h = parse_dimension(tok, source, "height");
  check_size(w, h, source);
  RasterField r = RasterField::filled(w, h, 0.0);
  for (std::size_t k = 0; k < r.values.size(); ++k) {
    if (!tk.next(tok)) throw_input_format(source, "truncated value data");
    if (!parse_real(tok, r.values[k])) throw_input_format(source, "bad value '" + tok + "'");
  }
  if (tk.next(tok)) throw_input_format(source, "trailing data");
  return r;
}

RasterField load_raster(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_input_format(path.string(), "cannot open raster file");
  std::string head(4, '\0');
  in.read(head.data(), 4);
  head.resize(static_cast<std::size_t>(in.gcount()));
  in.clear();
  in.seekg(0);
  if (head.rfind("P2", 0) == 0) return read_pgm(in, path.string());
  if (head == "RAST") return read_rast(in, path.string());
  throw_input_format(path.string(), "unknown raster format");
}

void write_rast(const RasterField& raster, std::ostream& out) {
  std::string text = "RAST " + std::to_string(raster.width) + " " + std::to_string(raster.height) + "\n";
  for (int j = 0; j < raster.height; ++j) {
    for (int i = 0; i < raster.width; ++i) {
      if (i) text.push_back(' ');
      append_real(text, raster.at(i, j));
    }
    text.push_back('\n');
  }
  out << text;
}

void save_rast(const RasterField& raster, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io(path.string(), "cannot open for writing");
  write_rast(raster, out);
  if (!out) throw_io(path.string(), "write failed");
}

}  // namespace rheo
