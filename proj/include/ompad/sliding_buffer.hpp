#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ompad {

// FIFO with contiguous storage. pop_front advances a head offset instead of
// shifting data; the dead prefix is compacted once it outgrows the live part,
// so push/pop stay amortized O(1) and data() can be handed to tight loops.
template <typename T>
class SlidingBuffer {
 public:
  void push_back(T v) { buf_.push_back(std::move(v)); }

  void pop_front() {
    if (empty()) throw std::logic_error("pop_front on empty buffer");
    ++head_;
    if (head_ >= kCompactMin && head_ >= buf_.size() - head_) compact();
  }

  T& operator[](std::size_t i) { return buf_[head_ + i]; }
  const T& operator[](std::size_t i) const { return buf_[head_ + i]; }

  T& front() { return buf_[head_]; }
  const T& front() const { return buf_[head_]; }
  T& back() { return buf_.back(); }
  const T& back() const { return buf_.back(); }

  std::size_t size() const { return buf_.size() - head_; }
  bool empty() const { return buf_.size() == head_; }

  T* data() { return buf_.data() + head_; }
  const T* data() const { return buf_.data() + head_; }

  void clear() {
    buf_.clear();
    head_ = 0;
  }

  std::vector<T> to_vector() const {
    return std::vector<T>(buf_.begin() + static_cast<std::ptrdiff_t>(head_), buf_.end());
  }

  void assign(std::vector<T> v) {
    buf_ = std::move(v);
    head_ = 0;
  }

 private:
  static constexpr std::size_t kCompactMin = 64;

  void compact() {
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(head_));
    head_ = 0;
  }

  std::vector<T> buf_;
  std::size_t head_ = 0;
};

}  // namespace ompad
