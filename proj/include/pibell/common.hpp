#ifndef PIBELL_COMMON_HPP
#define PIBELL_COMMON_HPP

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Dense>

namespace pibell {

using cplx = std::complex<double>;
inline constexpr cplx I_unit{0.0, 1.0};

// bad arguments: wrong size, out of range index, non-Hermitian input
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// mathematically valid call whose data falls outside a formula's domain
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// work would exceed a configured budget
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, std::uint64_t required)
        : std::runtime_error(what), required_(required) {}
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

// Number of worker threads. PIBELL_THREADS caps it.
inline unsigned thread_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PIBELL_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(v));
    }
    return hw;
}

// Runs f(i) for i in [0, count). Each index is handled by exactly one
// thread, so results written to slot i are deterministic.
template <class F>
void parallel_for(std::size_t count, F&& f, unsigned threads = thread_count()) {
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < count; i += threads) f(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

template <class Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m, double tol = 1e-12) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace pibell

#endif
