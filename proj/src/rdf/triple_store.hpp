#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "rdf/triple.hpp"

namespace agilekb::rdf {

// Read access shared by the base store and overlays.
class GraphView {
 public:
  virtual ~GraphView() = default;

  // Statements agreeing with `pattern` on every non-variable position, sorted
  // by (subject, predicate, object).
  virtual std::vector<Triple> match(const TriplePattern& pattern) const = 0;
  virtual bool contains(const Triple& t) const = 0;
  virtual std::size_t size() const = 0;

  std::vector<Triple> all() const;
};

class MutableGraph : public GraphView {
 public:
  // Returns true iff `t` was absent.
  virtual bool insert(const Triple& t) = 0;
};

// Set of triples behind three orderings: SPO (owning), POS and OSP (pointers
// into the SPO nodes). Every successful mutation bumps generation().
//
// Thread safety: many concurrent readers or a single writer.
class TripleStore final : public MutableGraph {
 public:
  TripleStore() = default;
  TripleStore(const TripleStore& other);
  TripleStore& operator=(const TripleStore& other);
  TripleStore(TripleStore&&) noexcept;
  TripleStore& operator=(TripleStore&&) noexcept;
  ~TripleStore() override = default;

  bool insert(const Triple& t) override;
  bool remove(const Triple& t);

  std::vector<Triple> match(const TriplePattern& pattern) const override;
  bool contains(const Triple& t) const override;
  std::size_t size() const override { return spo_.size(); }

  std::uint64_t generation() const noexcept { return generation_; }

  // Index enumerations, exposed for coherence checks.
  std::vector<Triple> scan_spo() const;
  std::vector<Triple> scan_pos() const;
  std::vector<Triple> scan_osp() const;

 private:
  struct PosLess {
    using is_transparent = void;
    bool operator()(const Triple* a, const Triple* b) const noexcept;
  };
  struct OspLess {
    using is_transparent = void;
    bool operator()(const Triple* a, const Triple* b) const noexcept;
  };

  void rebuild_secondary();

  std::set<Triple> spo_;
  std::set<const Triple*, PosLess> pos_;
  std::set<const Triple*, OspLess> osp_;
  std::uint64_t generation_ = 0;
};

// Copy-on-write layer over a TripleStore. Reads see base ∪ added; writes only
// touch `added`. Once the base mutates, every operation throws StaleOverlay.
// The overlay keeps a pointer to `base`, which must outlive it.
class OverlayStore final : public MutableGraph {
 public:
  explicit OverlayStore(const TripleStore& base);

  bool insert(const Triple& t) override;
  std::vector<Triple> match(const TriplePattern& pattern) const override;
  bool contains(const Triple& t) const override;
  std::size_t size() const override;

  bool stale() const noexcept { return base_->generation() != base_generation_; }
  const TripleStore& added() const;

 private:
  void check_fresh() const;

  const TripleStore* base_;
  TripleStore added_;
  std::uint64_t base_generation_;
};

inline OverlayStore overlay(const TripleStore& store) { return OverlayStore(store); }

}  // namespace agilekb::rdf
