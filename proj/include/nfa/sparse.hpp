#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nfa/rng.hpp"
#include "nfa/tensor.hpp"

namespace nfa {

// One document (or one user's feedback row): sorted unique feature ids with
// positive values.
struct SparseVec {
  std::vector<std::uint32_t> idx;
  Vec val;
  std::uint32_t dim = 0;

  std::size_t nnz() const { return idx.size(); }
  bool empty() const { return idx.empty(); }
  // Total token count (sum of values).
  double total() const;
  bool operator==(const SparseVec&) const = default;
};

// Builds a SparseVec from unsorted, possibly duplicated (id, value) pairs;
// duplicates are summed.
SparseVec make_sparse(std::uint32_t dim, std::vector<std::pair<std::uint32_t, double>> entries);

struct Corpus {
  std::vector<SparseVec> docs;
  std::uint32_t vocab = 0;
  // doc_frequency[v] = number of documents with a nonzero entry at v.
  std::vector<std::uint64_t> doc_frequency;

  std::size_t size() const { return docs.size(); }
  bool doc_empty(std::size_t d) const { return docs[d].empty(); }
  std::size_t empty_doc_count() const;
  void recount();
  bool operator==(const Corpus&) const = default;
};

enum class CorpusFormat : std::uint8_t { triples = 0, svmlight = 1 };

CorpusFormat corpus_format_from_string(const std::string& s);
std::string to_string(CorpusFormat f);

// Triples: lines "doc word count" (space or tab), 0-based ids, optional
// first line "D V" header, '#' comments. Duplicate (doc, word) pairs sum.
// Svmlight: lines "label id:value ...", 0-based ids.
// vocab_hint > 0 fixes the vocabulary size (ids >= vocab_hint are errors);
// otherwise the header or the maximum seen id determines it.
Corpus load_corpus(const std::string& path, CorpusFormat format, std::uint32_t vocab_hint = 0);

// Writes the triples format with a "D V" header; load_corpus round-trips it
// bit-exactly, including empty documents.
void save_corpus_triples(const Corpus& c, const std::string& path);

// One token per line; line number = feature id.
std::vector<std::string> load_vocab(const std::string& path);

// TF-IDF reweighting with document frequencies taken from `stats` (the
// training corpus), followed by L2 normalization. Features unseen in
// training get weight zero; an all-zero result is returned as-is.
SparseVec tfidf_l2(const Corpus& stats, const SparseVec& x);

// x / sum(x); the zero vector passes through unchanged.
SparseVec normalize_l1(const SparseVec& x);

struct RatingTriple {
  std::uint32_t user = 0;
  std::uint32_t item = 0;
  double rating = 0.0;
};

// Lines "user item rating"; '#' comments allowed.
std::vector<RatingTriple> load_ratings(const std::string& path);

// Keeps (user, item) pairs with rating >= threshold as binary counts, drops
// users left with fewer than min_items items, renumbers the surviving users
// by ascending original id. Duplicate pairs collapse to one entry. If
// user_ids is non-null it receives the original id per surviving row.
Corpus binarize_implicit(const std::vector<RatingTriple>& ratings, double threshold,
                         std::size_t min_items, std::vector<std::uint32_t>* user_ids = nullptr);

struct HeldOutUser {
  std::uint32_t user = 0;  // document index in the source corpus
  SparseVec fold_in;
  SparseVec targets;
};

struct StrongGenSplit {
  Corpus train;
  std::vector<HeldOutUser> valid;
  std::vector<HeldOutUser> test;
  // Held-out users dropped because they had fewer than two items or the
  // fold-in rounding left no targets.
  std::size_t excluded = 0;
};

// Partitions users by shuffled order into n_valid / n_test held-out sets and
// a training remainder; each held-out user's items are shuffled and split
// ceil(fold_frac * nnz) fold-in / remainder targets.
StrongGenSplit split_strong_generalization(const Corpus& c, Rng& rng, std::size_t n_valid,
                                           std::size_t n_test, double fold_frac);

// Number of tokens (summed counts) in x whose feature occurs in fewer than
// rare_frac of the stats corpus documents.
double rare_word_count(const Corpus& stats, const SparseVec& x, double rare_frac);

struct TopLResult {
  Corpus corpus;
  // kept[j] = original feature id of new feature j (ascending).
  std::vector<std::uint32_t> kept;
};

// Keeps the L features with the highest total corpus count (ties broken by
// lower id), remaps ids to 0..L-1 preserving ascending order. Documents that
// become empty are retained.
TopLResult restrict_top_l(const Corpus& c, std::uint32_t l);

}  // namespace nfa
