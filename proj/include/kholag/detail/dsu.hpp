#pragma once

#include <numeric>
#include <vector>

namespace kholag::detail {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

  // Dense labels 0..k-1 ordered by smallest member; returns k.
  int label(std::vector<int>& out) {
    const int n = static_cast<int>(parent_.size());
    out.assign(n, -1);
    std::vector<int> of_root(n, -1);
    int next = 0;
    for (int i = 0; i < n; ++i) {
      int r = find(i);
      if (of_root[r] < 0) of_root[r] = next++;
      out[i] = of_root[r];
    }
    return next;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace kholag::detail
