#include "dsonc/document.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include <json.hpp>

#include "dsonc/error.hpp"

namespace dsonc {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Forward iterator over the source text that publishes how many characters
// the JSON lexer has consumed, so SAX events can be mapped back to offsets.
class CountingIterator {
 public:
  using iterator_category = std::forward_iterator_tag;
  using value_type = char;
  using difference_type = std::ptrdiff_t;
  using pointer = const char*;
  using reference = const char&;

  CountingIterator() = default;
  CountingIterator(const char* base, const char* p, std::size_t* consumed) : base_(base), p_(p), consumed_(consumed) {}

  reference operator*() const { return *p_; }
  CountingIterator& operator++() {
    ++p_;
    if (consumed_) *consumed_ = static_cast<std::size_t>(p_ - base_);
    return *this;
  }
  CountingIterator operator++(int) {
    auto copy = *this;
    ++*this;
    return copy;
  }
  friend bool operator==(const CountingIterator& a, const CountingIterator& b) { return a.p_ == b.p_; }
  friend bool operator!=(const CountingIterator& a, const CountingIterator& b) { return a.p_ != b.p_; }

 private:
  const char* base_ = nullptr;
  const char* p_ = nullptr;
  std::size_t* consumed_ = nullptr;
};

std::string escape_pointer_token(const std::string& key) {
  std::string out;
  for (char ch : key) {
    if (ch == '~') out += "~0";
    else if (ch == '/') out += "~1";
    else out += ch;
  }
  return out;
}

bool is_number_char(char ch) {
  return (ch >= '0' && ch <= '9') || ch == '-' || ch == '+' || ch == '.' || ch == 'e' || ch == 'E';
}

// Builds the DOM while recording the start offset of every value by JSON pointer.
class LocatingSax {
 public:
  LocatingSax(json& root, std::string_view text, const std::size_t& consumed)
      : dom_(root, true), text_(text), consumed_(consumed) {}

  std::map<std::string, std::size_t> offsets;

  bool null() { return literal(4) && dom_.null(); }
  bool boolean(bool v) { return literal(v ? 4 : 5) && dom_.boolean(v); }
  bool number_integer(json::number_integer_t v) { return number() && dom_.number_integer(v); }
  bool number_unsigned(json::number_unsigned_t v) { return number() && dom_.number_unsigned(v); }
  bool number_float(json::number_float_t v, const std::string& s) { return number() && dom_.number_float(v, s); }
  bool string(std::string& v) {
    std::size_t i = consumed_ >= 2 ? consumed_ - 2 : 0;
    while (i > 0) {
      if (text_[i] == '"') {
        std::size_t slashes = 0;
        while (i > slashes && text_[i - slashes - 1] == '\\') ++slashes;
        if (slashes % 2 == 0) break;
      }
      --i;
    }
    record(i);
    after_value();
    return dom_.string(v);
  }
  bool binary(json::binary_t& v) { return dom_.binary(v); }
  bool start_object(std::size_t n) {
    record(consumed_ ? consumed_ - 1 : 0);
    frames_.push_back(Frame{false, 0, {}});
    return dom_.start_object(n);
  }
  bool key(std::string& k) {
    frames_.back().key = k;
    return dom_.key(k);
  }
  bool end_object() {
    frames_.pop_back();
    after_value();
    return dom_.end_object();
  }
  bool start_array(std::size_t n) {
    record(consumed_ ? consumed_ - 1 : 0);
    frames_.push_back(Frame{true, 0, {}});
    return dom_.start_array(n);
  }
  bool end_array() {
    frames_.pop_back();
    after_value();
    return dom_.end_array();
  }
  template <class Exception>
  bool parse_error(std::size_t position, const std::string& /*token*/, const Exception& ex) {
    std::string what = ex.what();
    if (const auto pos = what.find("] "); pos != std::string::npos) what = what.substr(pos + 2);
    const auto [line, column] = line_column(text_, position > 0 ? position - 1 : 0);
    throw ParseError("malformed JSON: " + what, line, column);
  }

 private:
  struct Frame {
    bool array = false;
    std::size_t index = 0;
    std::string key;
  };

  std::string pointer() const {
    std::string p;
    for (const auto& f : frames_) p += "/" + (f.array ? std::to_string(f.index) : escape_pointer_token(f.key));
    return p;
  }
  void record(std::size_t start) { offsets.emplace(pointer(), start); }
  void after_value() {
    if (!frames_.empty() && frames_.back().array) ++frames_.back().index;
  }
  bool literal(std::size_t length) {
    record(consumed_ >= length ? consumed_ - length : 0);
    after_value();
    return true;
  }
  bool number() {
    std::size_t end = consumed_;
    if (end > 0 && (end > text_.size() || !is_number_char(text_[end - 1]))) --end;
    std::size_t start = end;
    while (start > 0 && is_number_char(text_[start - 1])) --start;
    record(start);
    after_value();
    return true;
  }

  nlohmann::detail::json_sax_dom_parser<json> dom_;
  std::string_view text_;
  const std::size_t& consumed_;
  std::vector<Frame> frames_;
};

class LocatedJson {
 public:
  explicit LocatedJson(std::string_view text) : text_(text) {
    std::size_t consumed = 0;
    LocatingSax sax(value_, text_, consumed);
    CountingIterator first(text_.data(), text_.data(), &consumed);
    CountingIterator last(text_.data(), text_.data() + text_.size(), nullptr);
    json::sax_parse(first, last, &sax);
    offsets_ = std::move(sax.offsets);
  }

  const json& root() const { return value_; }
  const json& at(const std::string& pointer) const { return value_.at(json::json_pointer(pointer)); }
  bool has(const std::string& pointer) const { return value_.contains(json::json_pointer(pointer)); }

  [[noreturn]] void fail(const std::string& pointer, const std::string& message) const {
    std::string p = pointer;
    auto it = offsets_.find(p);
    while (it == offsets_.end() && !p.empty()) {
      p = p.substr(0, p.rfind('/'));
      it = offsets_.find(p);
    }
    const std::size_t offset = it == offsets_.end() ? 0 : it->second;
    const auto [line, column] = line_column(text_, offset);
    throw ParseError(message + " (at " + (pointer.empty() ? std::string("/") : pointer) + ")", line, column);
  }

 private:
  std::string_view text_;
  json value_;
  std::map<std::string, std::size_t> offsets_;
};

const json& require_object(const LocatedJson& doc, const std::string& pointer) {
  const auto& v = pointer.empty() ? doc.root() : doc.at(pointer);
  if (!v.is_object()) doc.fail(pointer, "expected a JSON object");
  return v;
}

const json& require_member(const LocatedJson& doc, const std::string& pointer, const std::string& key) {
  const auto& obj = require_object(doc, pointer);
  if (!obj.contains(key)) doc.fail(pointer, "missing required key \"" + key + "\"");
  return obj.at(key);
}

std::size_t require_dimension(const LocatedJson& doc, const std::string& pointer) {
  const auto& v = require_member(doc, pointer, "n");
  if (!v.is_number_integer() || v.get<long long>() < 1) doc.fail(pointer + "/n", "\"n\" must be a positive integer");
  return v.get<std::size_t>();
}

std::string exponent_string(const LocatedJson& doc, const std::string& pointer) {
  const auto& v = doc.at(pointer);
  if (!v.is_string()) doc.fail(pointer, "exponents must be JSON strings holding exact rationals");
  return v.get<std::string>();
}

Rational exponent_value(const LocatedJson& doc, const std::string& pointer, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    doc.fail(pointer, e.what());
  }
}

// Array of exponent strings; `dim` of 0 accepts any length and is then fixed.
Point read_point(const LocatedJson& doc, const std::string& pointer, std::size_t& dim,
                 std::vector<std::string>* raw = nullptr) {
  const auto& arr = doc.at(pointer);
  if (!arr.is_array()) doc.fail(pointer, "expected an array of exponent strings");
  if (dim == 0) dim = arr.size();
  if (arr.size() != dim || dim == 0) {
    doc.fail(pointer, "expected " + std::to_string(dim) + " exponent entries, found " + std::to_string(arr.size()));
  }
  std::vector<Rational> coords;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = pointer + "/" + std::to_string(i);
    const auto s = exponent_string(doc, p);
    coords.push_back(exponent_value(doc, p, s));
    if (raw) raw->push_back(s);
  }
  return Point(std::move(coords));
}

std::vector<Point> read_point_list(const LocatedJson& doc, const std::string& pointer, std::size_t& dim) {
  const auto& arr = doc.at(pointer);
  if (!arr.is_array()) doc.fail(pointer, "expected an array of points");
  std::vector<Point> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_point(doc, pointer + "/" + std::to_string(i), dim));
  return out;
}

SplitPolicy read_split(const LocatedJson& doc, const std::string& pointer, std::size_t dim) {
  const auto& v = pointer.empty() ? doc.root() : doc.at(pointer);
  if (v.is_string()) {
    if (v.get<std::string>() != "uniform") doc.fail(pointer, "split must be \"uniform\" or an object with \"pieces\"");
    return SplitPolicy::uniform();
  }
  const auto& pieces = require_member(doc, pointer, "pieces");
  if (!pieces.is_array()) doc.fail(pointer + "/pieces", "\"pieces\" must be an array");
  std::vector<SplitPiece> out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const std::string pp = pointer + "/pieces/" + std::to_string(i);
    require_member(doc, pp, "inner");
    SplitPiece piece{read_point(doc, pp + "/inner", dim), {}};
    const auto& shares = require_member(doc, pp, "shares");
    if (!shares.is_array()) doc.fail(pp + "/shares", "\"shares\" must be an array");
    for (std::size_t j = 0; j < shares.size(); ++j) {
      const std::string sp = pp + "/shares/" + std::to_string(j);
      require_member(doc, sp, "e");
      const auto& fr = require_member(doc, sp, "fraction");
      if (!fr.is_number() || !(fr.get<double>() >= 0.0) || !std::isfinite(fr.get<double>())) {
        doc.fail(sp + "/fraction", "fractions must be finite nonnegative numbers");
      }
      piece.shares.push_back(SplitShare{read_point(doc, sp + "/e", dim), fr.get<double>()});
    }
    out.push_back(std::move(piece));
  }
  return SplitPolicy::from_pieces(std::move(out));
}

SignomialDocument read_document(const LocatedJson& doc) {
  SignomialDocument out;
  out.n = require_dimension(doc, "");
  const auto& root = doc.root();
  if (root.contains("mode")) {
    const auto& m = root.at("mode");
    if (!m.is_string() || (m != "exp" && m != "poly")) doc.fail("/mode", "\"mode\" must be \"exp\" or \"poly\"");
    out.mode = m == "poly" ? ExponentMode::Poly : ExponentMode::Exp;
  }
  const auto& terms = require_member(doc, "", "terms");
  if (!terms.is_array()) doc.fail("/terms", "\"terms\" must be an array");
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const std::string tp = "/terms/" + std::to_string(i);
    const auto& c = require_member(doc, tp, "c");
    if (!c.is_number() || !std::isfinite(c.get<double>())) doc.fail(tp + "/c", "coefficient must be a finite number");
    require_member(doc, tp, "e");
    DocumentTerm term{c.get<double>(), {}};
    std::size_t dim = out.n;
    const Point p = read_point(doc, tp + "/e", dim, &term.e);
    if (out.mode == ExponentMode::Poly) {
      for (std::size_t k = 0; k < p.dim(); ++k) {
        if (!is_integer(p[k]) || sgn(p[k]) < 0) {
          doc.fail(tp + "/e/" + std::to_string(k), "poly mode requires nonnegative integer exponents");
        }
      }
    }
    out.terms.push_back(std::move(term));
  }
  json extras = json::object();
  for (const auto& [key, value] : root.items()) {
    if (key != "n" && key != "mode" && key != "terms") extras[key] = value;
  }
  out.extras_json = extras.dump();
  std::size_t dim = out.n;
  if (root.contains("split")) out.split = read_split(doc, "/split", dim);
  if (root.contains("ambient")) out.ambient = read_point_list(doc, "/ambient", dim);
  if (root.contains("delta")) out.delta = read_point_list(doc, "/delta", dim);
  return out;
}

}  // namespace

std::string_view to_string(ExponentMode mode) { return mode == ExponentMode::Poly ? "poly" : "exp"; }

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

Signomial SignomialDocument::to_signomial() const {
  std::vector<Term> ts;
  ts.reserve(terms.size());
  for (const auto& t : terms) {
    std::vector<Rational> coords;
    for (const auto& s : t.e) coords.push_back(parse_rational(s));
    ts.push_back(Term{t.c, Point(std::move(coords))});
  }
  return Signomial::from_terms(n, std::move(ts));
}

SignomialDocument SignomialDocument::from_signomial(const Signomial& f, ExponentMode mode) {
  SignomialDocument doc;
  doc.n = f.dim();
  doc.mode = mode;
  for (std::size_t i = 0; i < f.size(); ++i) {
    DocumentTerm t{f.coefficient(i), {}};
    for (const auto& x : f.support()[i].coords()) t.e.push_back(to_string(x));
    doc.terms.push_back(std::move(t));
  }
  return doc;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing " + path.string());
}

SignomialDocument parse_document(std::string_view text) { return read_document(LocatedJson(text)); }

SignomialDocument load_document(const std::filesystem::path& path) { return parse_document(read_text_file(path)); }

std::string dump_document(const SignomialDocument& doc) {
  ordered_json out;
  out["n"] = doc.n;
  out["mode"] = std::string(to_string(doc.mode));
  out["terms"] = ordered_json::array();
  for (const auto& t : doc.terms) out["terms"].push_back(ordered_json{{"c", t.c}, {"e", t.e}});
  const auto extras = ordered_json::parse(doc.extras_json);
  for (const auto& [key, value] : extras.items()) out[key] = value;
  return out.dump(2) + "\n";
}

void save_document(const std::filesystem::path& path, const SignomialDocument& doc) {
  write_text_file(path, dump_document(doc));
}

SplitPolicy parse_split(std::string_view text) {
  const LocatedJson doc(text);
  const auto& root = doc.root();
  std::size_t dim = 0;
  if (root.is_object() && root.contains("split") && !root.contains("pieces")) return read_split(doc, "/split", dim);
  return read_split(doc, "", dim);
}

Circuit parse_circuit(std::string_view text) {
  const LocatedJson doc(text);
  if (require_object(doc, "").contains("terms")) {
    const auto f = read_document(doc).to_signomial();
    const auto cls = classify_point_set(f.support());
    if (cls.kind != PointSetKind::SimplicialCircuit) {
      throw Error(ErrorCode::NotACircuit, "support is not a simplicial circuit (" + to_string(cls.reason) + ")");
    }
    return *cls.circuit;
  }
  std::size_t dim = require_dimension(doc, "");
  require_member(doc, "", "vertices");
  require_member(doc, "", "inner");
  auto vertices = read_point_list(doc, "/vertices", dim);
  auto inner = read_point(doc, "/inner", dim);
  return Circuit::make(std::move(vertices), std::move(inner));
}

}  // namespace dsonc
