#pragma once

// Array-backed binary min-heap over dense integer ids with decrease-key.
//
// Each id in [0, capacity) is in the heap at most once. Ordering is by
// (priority, id), so equal priorities pop the smallest id first.

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace pcn {

template <typename Priority>
class IndexedMinHeap {
 public:
  using Id = std::uint32_t;

  explicit IndexedMinHeap(std::size_t capacity)
      : position_(capacity, kAbsent) {}

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::size_t capacity() const { return position_.size(); }

  bool contains(Id id) const {
    return id < position_.size() && position_[id] != kAbsent;
  }

  const Priority& priority(Id id) const {
    assert(contains(id));
    return heap_[position_[id]].priority;
  }

  std::pair<Id, Priority> top() const {
    assert(!empty());
    return {heap_.front().id, heap_.front().priority};
  }

  void push(Id id, Priority p) {
    assert(id < position_.size() && !contains(id));
    position_[id] = heap_.size();
    heap_.push_back({p, id});
    sift_up(heap_.size() - 1);
  }

  // Inserts id, or lowers its priority if already queued. A priority that is
  // not lower than the current one is ignored.
  void push_or_decrease(Id id, Priority p) {
    if (!contains(id)) {
      push(id, p);
      return;
    }
    const std::size_t i = position_[id];
    if (!(p < heap_[i].priority)) return;
    heap_[i].priority = p;
    sift_up(i);
  }

  std::pair<Id, Priority> pop() {
    assert(!empty());
    const Entry root = heap_.front();
    position_[root.id] = kAbsent;
    const Entry last = heap_.back();
    heap_.pop_back();
    if (!heap_.empty()) {
      heap_.front() = last;
      position_[last.id] = 0;
      sift_down(0);
    }
    return {root.id, root.priority};
  }

 private:
  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

  struct Entry {
    Priority priority;
    Id id;
  };

  static bool less(const Entry& a, const Entry& b) {
    if (a.priority < b.priority) return true;
    if (b.priority < a.priority) return false;
    return a.id < b.id;
  }

  void place(std::size_t i, const Entry& e) {
    heap_[i] = e;
    position_[e.id] = i;
  }

  void sift_up(std::size_t i) {
    const Entry e = heap_[i];
    while (i > 0) {
      const std::size_t parent = (i - 1) / 2;
      if (!less(e, heap_[parent])) break;
      place(i, heap_[parent]);
      i = parent;
    }
    place(i, e);
  }

  void sift_down(std::size_t i) {
    const Entry e = heap_[i];
    const std::size_t n = heap_.size();
    for (;;) {
      std::size_t child = 2 * i + 1;
      if (child >= n) break;
      if (child + 1 < n && less(heap_[child + 1], heap_[child])) ++child;
      if (!less(heap_[child], e)) break;
      place(i, heap_[child]);
      i = child;
    }
    place(i, e);
  }

  std::vector<Entry> heap_;
  std::vector<std::size_t> position_;
};

}  // namespace pcn
