#pragma once

// Thin RAII layer over FFTW3 (double precision). Transforms are unnormalised.

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <vector>

#include "ktm/error.hpp"

namespace ktm::fft {

using Complex = std::complex<double>;

static_assert(sizeof(Complex) == sizeof(fftw_complex));

namespace detail {

// FFTW's planner is not thread-safe; execution of distinct plans is.
inline std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

inline std::vector<int> to_int_dims(const std::vector<std::size_t>& dims) {
    if (dims.empty() || dims.size() > 3) throw InvalidArgument("fft: rank must be 1, 2 or 3");
    std::vector<int> out(dims.size());
    for (std::size_t j = 0; j < dims.size(); ++j) {
        if (dims[j] == 0) throw InvalidArgument("fft: zero-length axis");
        out[j] = static_cast<int>(dims[j]);
    }
    return out;
}

}  // namespace detail

/// SIMD-aligned, zero-initialised heap array.
template <class T>
class Buffer {
public:
    Buffer() = default;
    explicit Buffer(std::size_t n) : size_(n) {
        if (n == 0) return;
        data_.reset(static_cast<T*>(fftw_malloc(sizeof(T) * n)));
        if (!data_) throw std::bad_alloc();
        std::fill(data_.get(), data_.get() + n, T{});
    }

    T* data() noexcept { return data_.get(); }
    const T* data() const noexcept { return data_.get(); }
    std::size_t size() const noexcept { return size_; }
    T& operator[](std::size_t i) noexcept { return data_[i]; }
    const T& operator[](std::size_t i) const noexcept { return data_[i]; }
    T* begin() noexcept { return data(); }
    T* end() noexcept { return data() + size_; }

private:
    std::unique_ptr<T[], detail::FftwFree> data_;
    std::size_t size_ = 0;
};

/// Owning handle for an FFTW plan.
class Plan {
public:
    Plan() = default;
    explicit Plan(fftw_plan p) : plan_(p) {
        if (!plan_) throw Error("fft: FFTW failed to create a plan");
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    Plan(Plan&& o) noexcept : plan_(o.plan_) { o.plan_ = nullptr; }
    Plan& operator=(Plan&& o) noexcept {
        if (this != &o) {
            reset();
            plan_ = o.plan_;
            o.plan_ = nullptr;
        }
        return *this;
    }
    ~Plan() { reset(); }

    void execute() const { fftw_execute(plan_); }

private:
    void reset() noexcept {
        if (plan_) {
            std::lock_guard lock(detail::planner_mutex());
            fftw_destroy_plan(plan_);
            plan_ = nullptr;
        }
    }
    fftw_plan plan_ = nullptr;
};

/// Number of complex outputs of a real-to-complex transform (last axis halved).
inline std::size_t half_spectrum_size(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t j = 0; j + 1 < dims.size(); ++j) n *= dims[j];
    return n * (dims.back() / 2 + 1);
}

inline Plan plan_r2c(const std::vector<std::size_t>& dims, double* in, Complex* out) {
    auto n = detail::to_int_dims(dims);
    std::lock_guard lock(detail::planner_mutex());
    return Plan(fftw_plan_dft_r2c(static_cast<int>(n.size()), n.data(), in, reinterpret_cast<fftw_complex*>(out),
                                  FFTW_ESTIMATE));
}

inline Plan plan_c2r(const std::vector<std::size_t>& dims, Complex* in, double* out) {
    auto n = detail::to_int_dims(dims);
    std::lock_guard lock(detail::planner_mutex());
    return Plan(fftw_plan_dft_c2r(static_cast<int>(n.size()), n.data(), reinterpret_cast<fftw_complex*>(in), out,
                                  FFTW_ESTIMATE));
}

/// sign = FFTW_FORWARD (-1) or FFTW_BACKWARD (+1).
inline Plan plan_c2c(const std::vector<std::size_t>& dims, Complex* in, Complex* out, int sign) {
    auto n = detail::to_int_dims(dims);
    std::lock_guard lock(detail::planner_mutex());
    return Plan(fftw_plan_dft(static_cast<int>(n.size()), n.data(), reinterpret_cast<fftw_complex*>(in),
                              reinterpret_cast<fftw_complex*>(out), sign, FFTW_ESTIMATE));
}

}  // namespace ktm::fft
