#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace flowmap {

// Row-major (y-major) dense 2D array; index = y * width + x.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }

    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }
    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

    T& operator()(int x, int y) {
        assert(contains(x, y));
        return data_[index(x, y)];
    }
    const T& operator()(int x, int y) const {
        assert(contains(x, y));
        return data_[index(x, y)];
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    friend bool operator==(const Grid&, const Grid&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

}  // namespace flowmap
