#include "nfa/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace nfa {
namespace {

std::string line_error(const std::string& path, std::size_t line_no, const std::string& what) {
  return path + ":" + std::to_string(line_no) + ": " + what;
}

bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Status::io_error, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Status::io_error, "cannot open '" + path + "' for writing");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

double SparseVec::total() const {
  return std::accumulate(val.begin(), val.end(), 0.0);
}

SparseVec make_sparse(std::uint32_t dim, std::vector<std::pair<std::uint32_t, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.dim = dim;
  for (const auto& [id, value] : entries) {
    if (id >= dim) fail(Status::invalid_argument, "make_sparse: feature id out of range");
    if (!out.idx.empty() && out.idx.back() == id) {
      out.val.back() += value;
    } else {
      out.idx.push_back(id);
      out.val.push_back(value);
    }
  }
  // Summed duplicates can cancel only if inputs were nonpositive; forbid that.
  for (double v : out.val) {
    if (!(v > 0.0)) fail(Status::invalid_argument, "make_sparse: values must be positive");
  }
  return out;
}

std::size_t Corpus::empty_doc_count() const {
  std::size_t n = 0;
  for (const auto& d : docs) n += d.empty() ? 1 : 0;
  return n;
}

void Corpus::recount() {
  doc_frequency.assign(vocab, 0);
  for (const auto& d : docs)
    for (std::uint32_t id : d.idx) ++doc_frequency[id];
}

CorpusFormat corpus_format_from_string(const std::string& s) {
  if (s == "triples") return CorpusFormat::triples;
  if (s == "svmlight") return CorpusFormat::svmlight;
  fail(Status::invalid_argument, "unknown corpus format '" + s + "'");
}

std::string to_string(CorpusFormat f) {
  return f == CorpusFormat::triples ? "triples" : "svmlight";
}

namespace {

Corpus load_triples(const std::string& path, std::uint32_t vocab_hint) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  bool saw_header = false;
  std::uint64_t header_docs = 0, header_vocab = 0;
  bool saw_data = false;
  // doc -> (word -> count); std::map keeps ids sorted while summing dups.
  std::vector<std::map<std::uint32_t, double>> rows;
  std::uint32_t max_word = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    std::string t;
    while (ss >> t) tok.push_back(t);
    if (tok.size() == 2 && !saw_data && !saw_header) {
      try {
        header_docs = std::stoull(tok[0]);
        header_vocab = std::stoull(tok[1]);
      } catch (const std::exception&) {
        fail(Status::parse_error, line_error(path, line_no, "malformed header"));
      }
      saw_header = true;
      continue;
    }
    if (tok.size() != 3)
      fail(Status::parse_error, line_error(path, line_no, "expected 'doc word count'"));
    std::uint64_t doc, word;
    double count;
    try {
      doc = std::stoull(tok[0]);
      word = std::stoull(tok[1]);
      count = std::stod(tok[2]);
    } catch (const std::exception&) {
      fail(Status::parse_error, line_error(path, line_no, "malformed triple"));
    }
    if (!(count > 0.0) || !std::isfinite(count))
      fail(Status::parse_error, line_error(path, line_no, "count must be positive and finite"));
    if (saw_header && doc >= header_docs)
      fail(Status::parse_error, line_error(path, line_no, "doc id exceeds header"));
    std::uint64_t declared_vocab = vocab_hint ? vocab_hint : (saw_header ? header_vocab : 0);
    if (declared_vocab && word >= declared_vocab)
      fail(Status::parse_error,
           line_error(path, line_no,
                      "feature id " + std::to_string(word) + " >= vocab size " +
                          std::to_string(declared_vocab)));
    if (doc >= rows.size()) rows.resize(doc + 1);
    rows[static_cast<std::size_t>(doc)][static_cast<std::uint32_t>(word)] += count;
    max_word = std::max(max_word, static_cast<std::uint32_t>(word));
    saw_data = true;
  }

  Corpus c;
  c.vocab = vocab_hint            ? vocab_hint
            : saw_header          ? static_cast<std::uint32_t>(header_vocab)
            : saw_data            ? max_word + 1
                                  : 0;
  std::size_t docs = saw_header ? static_cast<std::size_t>(header_docs) : rows.size();
  c.docs.resize(docs);
  for (std::size_t d = 0; d < rows.size() && d < docs; ++d) {
    SparseVec& sv = c.docs[d];
    sv.dim = c.vocab;
    for (const auto& [id, count] : rows[d]) {
      sv.idx.push_back(id);
      sv.val.push_back(count);
    }
  }
  for (auto& sv : c.docs) sv.dim = c.vocab;
  c.recount();
  return c;
}

Corpus load_svmlight(const std::string& path, std::uint32_t vocab_hint) {
  auto in = open_input(path);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> rows;
  std::uint32_t max_word = 0;
  bool saw_data = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::string t;
    if (!(ss >> t)) continue;  // label, ignored
    rows.emplace_back();
    while (ss >> t) {
      auto colon = t.find(':');
      if (colon == std::string::npos)
        fail(Status::parse_error, line_error(path, line_no, "expected 'id:value'"));
      std::uint64_t id;
      double value;
      try {
        id = std::stoull(t.substr(0, colon));
        value = std::stod(t.substr(colon + 1));
      } catch (const std::exception&) {
        fail(Status::parse_error, line_error(path, line_no, "malformed 'id:value'"));
      }
      if (!(value > 0.0) || !std::isfinite(value))
        fail(Status::parse_error, line_error(path, line_no, "value must be positive and finite"));
      if (vocab_hint && id >= vocab_hint)
        fail(Status::parse_error,
             line_error(path, line_no,
                        "feature id " + std::to_string(id) + " >= vocab size " +
                            std::to_string(vocab_hint)));
      rows.back().emplace_back(static_cast<std::uint32_t>(id), value);
      max_word = std::max(max_word, static_cast<std::uint32_t>(id));
      saw_data = true;
    }
  }

  Corpus c;
  c.vocab = vocab_hint ? vocab_hint : (saw_data ? max_word + 1 : 0);
  c.docs.reserve(rows.size());
  for (auto& row : rows) c.docs.push_back(make_sparse(c.vocab, std::move(row)));
  c.recount();
  return c;
}

}  // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format, std::uint32_t vocab_hint) {
  return format == CorpusFormat::triples ? load_triples(path, vocab_hint)
                                         : load_svmlight(path, vocab_hint);
}

void save_corpus_triples(const Corpus& c, const std::string& path) {
  auto out = open_output(path);
  out << c.docs.size() << ' ' << c.vocab << '\n';
  for (std::size_t d = 0; d < c.docs.size(); ++d) {
    const SparseVec& sv = c.docs[d];
    for (std::size_t i = 0; i < sv.nnz(); ++i)
      out << d << ' ' << sv.idx[i] << ' ' << format_double(sv.val[i]) << '\n';
  }
  if (!out) fail(Status::io_error, "failed writing '" + path + "'");
}

std::vector<std::string> load_vocab(const std::string& path) {
  auto in = open_input(path);
  std::vector<std::string> tokens;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    tokens.push_back(line);
  }
  return tokens;
}

SparseVec tfidf_l2(const Corpus& stats, const SparseVec& x) {
  if (x.dim != stats.vocab)
    fail(Status::invalid_argument, "tfidf_l2: dimension mismatch with statistics corpus");
  const double docs = static_cast<double>(stats.size());
  SparseVec out;
  out.dim = x.dim;
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < x.nnz(); ++i) {
    const std::uint64_t df = stats.doc_frequency[x.idx[i]];
    if (df == 0) continue;  // unseen in training: weight zero
    const double w = x.val[i] * std::log(docs / static_cast<double>(df));
    if (w <= 0.0) continue;  // df == D gives log 1 = 0
    out.idx.push_back(x.idx[i]);
    out.val.push_back(w);
    norm_sq += w * w;
  }
  if (norm_sq > 0.0) {
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (double& v : out.val) v *= inv;
  }
  return out;
}

SparseVec normalize_l1(const SparseVec& x) {
  SparseVec out = x;
  const double total = x.total();
  if (total > 0.0) {
    for (double& v : out.val) v /= total;
  }
  return out;
}

std::vector<RatingTriple> load_ratings(const std::string& path) {
  auto in = open_input(path);
  std::vector<RatingTriple> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ss(line);
    std::uint64_t user, item;
    double rating;
    if (!(ss >> user >> item >> rating))
      fail(Status::parse_error, line_error(path, line_no, "expected 'user item rating'"));
    if (!std::isfinite(rating))
      fail(Status::parse_error, line_error(path, line_no, "rating must be finite"));
    out.push_back({static_cast<std::uint32_t>(user), static_cast<std::uint32_t>(item), rating});
  }
  return out;
}

Corpus binarize_implicit(const std::vector<RatingTriple>& ratings, double threshold,
                         std::size_t min_items, std::vector<std::uint32_t>* user_ids) {
  // user -> set of kept items (dedup).
  std::map<std::uint32_t, std::map<std::uint32_t, bool>> kept;
  std::uint32_t max_item = 0;
  for (const auto& r : ratings) {
    max_item = std::max(max_item, r.item);
    if (r.rating >= threshold) kept[r.user][r.item] = true;
  }
  Corpus c;
  c.vocab = ratings.empty() ? 0 : max_item + 1;
  if (user_ids) user_ids->clear();
  for (const auto& [user, items] : kept) {
    if (items.size() < min_items) continue;
    SparseVec sv;
    sv.dim = c.vocab;
    for (const auto& [item, _] : items) {
      sv.idx.push_back(item);
      sv.val.push_back(1.0);
    }
    c.docs.push_back(std::move(sv));
    if (user_ids) user_ids->push_back(user);
  }
  c.recount();
  return c;
}

namespace {

// Splits one user's items into fold-in / targets; returns false when the
// user cannot provide a nonempty target set.
bool split_user(const SparseVec& row, Rng& rng, double fold_frac, HeldOutUser& out) {
  const std::size_t nnz = row.nnz();
  if (nnz < 2) return false;
  const std::size_t n_fold =
      static_cast<std::size_t>(std::ceil(fold_frac * static_cast<double>(nnz)));
  if (n_fold == 0 || n_fold >= nnz) return false;

  std::vector<std::size_t> order(nnz);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  std::vector<std::pair<std::uint32_t, double>> fold, target;
  for (std::size_t i = 0; i < nnz; ++i) {
    auto& dst = i < n_fold ? fold : target;
    dst.emplace_back(row.idx[order[i]], row.val[order[i]]);
  }
  out.fold_in = make_sparse(row.dim, std::move(fold));
  out.targets = make_sparse(row.dim, std::move(target));
  return true;
}

}  // namespace

StrongGenSplit split_strong_generalization(const Corpus& c, Rng& rng, std::size_t n_valid,
                                           std::size_t n_test, double fold_frac) {
  if (n_valid + n_test >= c.size())
    fail(Status::invalid_argument, "split: n_valid + n_test must be below the user count");
  if (!(fold_frac > 0.0 && fold_frac < 1.0))
    fail(Status::invalid_argument, "split: fold_frac must lie in (0, 1)");

  std::vector<std::uint32_t> order(c.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);

  StrongGenSplit split;
  split.train.vocab = c.vocab;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::uint32_t user = order[pos];
    const bool to_valid = pos < n_valid;
    const bool to_test = !to_valid && pos < n_valid + n_test;
    if (!to_valid && !to_test) continue;
    HeldOutUser held;
    held.user = user;
    if (!split_user(c.docs[user], rng, fold_frac, held)) {
      ++split.excluded;
      continue;
    }
    (to_valid ? split.valid : split.test).push_back(std::move(held));
  }
  // Training corpus keeps the users' original relative order.
  std::vector<bool> held_out(c.size(), false);
  for (std::size_t pos = 0; pos < n_valid + n_test && pos < order.size(); ++pos)
    held_out[order[pos]] = true;
  for (std::size_t d = 0; d < c.size(); ++d)
    if (!held_out[d]) split.train.docs.push_back(c.docs[d]);
  split.train.recount();
  return split;
}

double rare_word_count(const Corpus& stats, const SparseVec& x, double rare_frac) {
  if (x.dim != stats.vocab)
    fail(Status::invalid_argument, "rare_word_count: dimension mismatch");
  const double docs = static_cast<double>(stats.size());
  double tokens = 0.0;
  for (std::size_t i = 0; i < x.nnz(); ++i) {
    const double df = static_cast<double>(stats.doc_frequency[x.idx[i]]);
    if (docs == 0.0 || df / docs < rare_frac) tokens += x.val[i];
  }
  return tokens;
}

TopLResult restrict_top_l(const Corpus& c, std::uint32_t l) {
  if (l < 1 || l > c.vocab)
    fail(Status::invalid_argument, "restrict_top_l: L must lie in [1, vocab]");

  Vec totals(c.vocab, 0.0);
  for (const auto& d : c.docs)
    for (std::size_t i = 0; i < d.nnz(); ++i) totals[d.idx[i]] += d.val[i];

  std::vector<std::uint32_t> by_count(c.vocab);
  std::iota(by_count.begin(), by_count.end(), 0);
  std::stable_sort(by_count.begin(), by_count.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (totals[a] != totals[b]) return totals[a] > totals[b];
    return a < b;
  });
  by_count.resize(l);
  std::sort(by_count.begin(), by_count.end());

  std::vector<std::int64_t> remap(c.vocab, -1);
  for (std::uint32_t j = 0; j < l; ++j) remap[by_count[j]] = j;

  TopLResult out;
  out.kept = std::move(by_count);
  out.corpus.vocab = l;
  out.corpus.docs.reserve(c.size());
  for (const auto& d : c.docs) {
    SparseVec sv;
    sv.dim = l;
    for (std::size_t i = 0; i < d.nnz(); ++i) {
      const std::int64_t nid = remap[d.idx[i]];
      if (nid < 0) continue;
      sv.idx.push_back(static_cast<std::uint32_t>(nid));
      sv.val.push_back(d.val[i]);
    }
    out.corpus.docs.push_back(std::move(sv));
  }
  out.corpus.recount();
  return out;
}

}  // namespace nfa
