#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace oal {

// Flat row-major [H][S][A] tensor. h indexes decision steps 0..H-1.
struct Tensor3 {
  int H = 0, S = 0, A = 0;
  std::vector<double> v;

  Tensor3() = default;
  Tensor3(int H_, int S_, int A_, double fill = 0.0)
      : H(H_), S(S_), A(A_), v(static_cast<std::size_t>(H_) * S_ * A_, fill) {}

  std::size_t idx(int h, int s, int a) const {
    return (static_cast<std::size_t>(h) * S + s) * A + a;
  }
  double& operator()(int h, int s, int a) { return v[idx(h, s, a)]; }
  double operator()(int h, int s, int a) const { return v[idx(h, s, a)]; }

  // Action row at (h, s): A contiguous entries.
  std::span<double> row(int h, int s) { return {v.data() + idx(h, s, 0), static_cast<std::size_t>(A)}; }
  std::span<const double> row(int h, int s) const { return {v.data() + idx(h, s, 0), static_cast<std::size_t>(A)}; }

  // Step slice at h: S*A contiguous entries.
  std::span<double> slice(int h) { return {v.data() + idx(h, 0, 0), static_cast<std::size_t>(S) * A}; }
  std::span<const double> slice(int h) const { return {v.data() + idx(h, 0, 0), static_cast<std::size_t>(S) * A}; }

  std::size_t size() const { return v.size(); }
  bool same_shape(const Tensor3& o) const { return H == o.H && S == o.S && A == o.A; }
};

// Flat row-major [H][S][A][S2] tensor of transition rows.
struct Tensor4 {
  int H = 0, S = 0, A = 0, S2 = 0;
  std::vector<double> v;

  Tensor4() = default;
  Tensor4(int H_, int S_, int A_, int S2_, double fill = 0.0)
      : H(H_), S(S_), A(A_), S2(S2_),
        v(static_cast<std::size_t>(H_) * S_ * A_ * S2_, fill) {}

  std::size_t idx(int h, int s, int a, int s2) const {
    return ((static_cast<std::size_t>(h) * S + s) * A + a) * S2 + s2;
  }
  double& operator()(int h, int s, int a, int s2) { return v[idx(h, s, a, s2)]; }
  double operator()(int h, int s, int a, int s2) const { return v[idx(h, s, a, s2)]; }

  // Next-state row at (h, s, a): S2 contiguous entries.
  std::span<double> row(int h, int s, int a) { return {v.data() + idx(h, s, a, 0), static_cast<std::size_t>(S2)}; }
  std::span<const double> row(int h, int s, int a) const {
    return {v.data() + idx(h, s, a, 0), static_cast<std::size_t>(S2)};
  }

  std::size_t size() const { return v.size(); }
  bool same_shape(const Tensor4& o) const { return H == o.H && S == o.S && A == o.A && S2 == o.S2; }
};

// Integer companion of Tensor3 (visit counts).
struct Count3 {
  int H = 0, S = 0, A = 0;
  std::vector<std::int64_t> v;

  Count3() = default;
  Count3(int H_, int S_, int A_)
      : H(H_), S(S_), A(A_), v(static_cast<std::size_t>(H_) * S_ * A_, 0) {}

  std::size_t idx(int h, int s, int a) const {
    return (static_cast<std::size_t>(h) * S + s) * A + a;
  }
  std::int64_t& operator()(int h, int s, int a) { return v[idx(h, s, a)]; }
  std::int64_t operator()(int h, int s, int a) const { return v[idx(h, s, a)]; }
};

// Integer companion of Tensor4 (transition counts).
struct Count4 {
  int H = 0, S = 0, A = 0, S2 = 0;
  std::vector<std::int64_t> v;

  Count4() = default;
  Count4(int H_, int S_, int A_, int S2_)
      : H(H_), S(S_), A(A_), S2(S2_),
        v(static_cast<std::size_t>(H_) * S_ * A_ * S2_, 0) {}

  std::size_t idx(int h, int s, int a, int s2) const {
    return ((static_cast<std::size_t>(h) * S + s) * A + a) * S2 + s2;
  }
  std::int64_t& operator()(int h, int s, int a, int s2) { return v[idx(h, s, a, s2)]; }
  std::int64_t operator()(int h, int s, int a, int s2) const { return v[idx(h, s, a, s2)]; }
};

}  // namespace oal
