#include "rdf/triple_store.hpp"

#include <algorithm>
#include <tuple>

#include "common/error.hpp"

namespace agilekb::rdf {

std::vector<Triple> GraphView::all() const {
  return match({Term::variable("s"), Term::variable("p"), Term::variable("o")});
}

bool TripleStore::PosLess::operator()(const Triple* a, const Triple* b) const noexcept {
  return std::tie(a->predicate, a->object, a->subject) < std::tie(b->predicate, b->object, b->subject);
}

bool TripleStore::OspLess::operator()(const Triple* a, const Triple* b) const noexcept {
  return std::tie(a->object, a->subject, a->predicate) < std::tie(b->object, b->subject, b->predicate);
}

TripleStore::TripleStore(const TripleStore& other) : spo_(other.spo_), generation_(other.generation_) {
  rebuild_secondary();
}

TripleStore& TripleStore::operator=(const TripleStore& other) {
  if (this != &other) {
    spo_ = other.spo_;
    generation_ = other.generation_;
    rebuild_secondary();
  }
  return *this;
}

// std::set move keeps node addresses, so the pointer indexes stay valid.
TripleStore::TripleStore(TripleStore&&) noexcept = default;
TripleStore& TripleStore::operator=(TripleStore&&) noexcept = default;

void TripleStore::rebuild_secondary() {
  pos_.clear();
  osp_.clear();
  for (const Triple& t : spo_) {
    pos_.insert(&t);
    osp_.insert(&t);
  }
}

bool TripleStore::insert(const Triple& t) {
  if (!is_valid_triple(t.subject, t.predicate, t.object)) {
    throw Error(ErrorCode::MalformedTerm, "invalid triple " + to_display(t));
  }
  auto [it, inserted] = spo_.insert(t);
  if (!inserted) return false;
  pos_.insert(&*it);
  osp_.insert(&*it);
  ++generation_;
  return true;
}

bool TripleStore::remove(const Triple& t) {
  auto it = spo_.find(t);
  if (it == spo_.end()) return false;
  pos_.erase(&*it);
  osp_.erase(&*it);
  spo_.erase(it);
  ++generation_;
  return true;
}

bool TripleStore::contains(const Triple& t) const { return spo_.count(t) != 0; }

std::vector<Triple> TripleStore::match(const TriplePattern& p) const {
  const bool s = !p.subject.is_variable();
  const bool pr = !p.predicate.is_variable();
  const bool o = !p.object.is_variable();
  std::vector<Triple> out;

  // Probe keys: unbound positions take the minimal Term so lower_bound lands
  // on the first statement of the bound prefix.
  Triple probe{s ? p.subject : Term{}, pr ? p.predicate : Term{}, o ? p.object : Term{}};

  if (s) {
    for (auto it = spo_.lower_bound(probe); it != spo_.end(); ++it) {
      if (it->subject != p.subject) break;
      if (pr && it->predicate != p.predicate) break;
      if (o && it->object != p.object) {
        if (pr) break;
        continue;
      }
      out.push_back(*it);
    }
    return out;
  }
  if (pr) {
    for (auto it = pos_.lower_bound(&probe); it != pos_.end(); ++it) {
      const Triple& t = **it;
      if (t.predicate != p.predicate) break;
      if (o && t.object != p.object) break;
      out.push_back(t);
    }
  } else if (o) {
    for (auto it = osp_.lower_bound(&probe); it != osp_.end(); ++it) {
      const Triple& t = **it;
      if (t.object != p.object) break;
      out.push_back(t);
    }
  } else {
    return {spo_.begin(), spo_.end()};
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> TripleStore::scan_spo() const { return {spo_.begin(), spo_.end()}; }

std::vector<Triple> TripleStore::scan_pos() const {
  std::vector<Triple> out;
  out.reserve(pos_.size());
  for (const Triple* t : pos_) out.push_back(*t);
  return out;
}

std::vector<Triple> TripleStore::scan_osp() const {
  std::vector<Triple> out;
  out.reserve(osp_.size());
  for (const Triple* t : osp_) out.push_back(*t);
  return out;
}

OverlayStore::OverlayStore(const TripleStore& base) : base_(&base), base_generation_(base.generation()) {}

void OverlayStore::check_fresh() const {
  if (stale()) {
    throw Error(ErrorCode::StaleOverlay, "overlay is stale: its base store changed after creation");
  }
}

bool OverlayStore::insert(const Triple& t) {
  check_fresh();
  if (base_->contains(t)) return false;
  return added_.insert(t);
}

bool OverlayStore::contains(const Triple& t) const {
  check_fresh();
  return base_->contains(t) || added_.contains(t);
}

std::size_t OverlayStore::size() const {
  check_fresh();
  return base_->size() + added_.size();
}

const TripleStore& OverlayStore::added() const {
  check_fresh();
  return added_;
}

std::vector<Triple> OverlayStore::match(const TriplePattern& pattern) const {
  check_fresh();
  std::vector<Triple> from_base = base_->match(pattern);
  std::vector<Triple> from_added = added_.match(pattern);
  if (from_added.empty()) return from_base;
  // Disjoint by construction, both sorted.
  std::vector<Triple> out;
  out.reserve(from_base.size() + from_added.size());
  std::merge(from_base.begin(), from_base.end(), from_added.begin(), from_added.end(),
             std::back_inserter(out));
  return out;
}

}  // namespace agilekb::rdf
