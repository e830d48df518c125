#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace reseq {

struct executor_config {
    unsigned workers = 1;
    std::size_t chunk_size = std::size_t{1} << 15;

    static executor_config machine_default() {
        unsigned hw = std::thread::hardware_concurrency();
        return executor_config{hw ? hw : 1, std::size_t{1} << 15};
    }
};

/// Bulk-synchronous executor: run() maps a pure function over an index
/// space and returns only after every index has been processed, so each
/// run() is one phase ending in one barrier. Within a phase the body must
/// read only previous-phase arrays and write only its own output slots;
/// under that contract results are bit-identical for every worker count.
class executor {
public:
    executor() : executor(executor_config{}) {}

    explicit executor(executor_config cfg) : cfg_(cfg) {
        if (cfg_.workers < 1) cfg_.workers = 1;
        if (cfg_.chunk_size < 1) cfg_.chunk_size = 1;
        for (unsigned w = 1; w < cfg_.workers; ++w)
            threads_.emplace_back([this, w] { worker_loop(w); });
    }

    executor(const executor&) = delete;
    executor& operator=(const executor&) = delete;

    ~executor() {
        {
            std::lock_guard<std::mutex> lock(mutex_);
            stop_ = true;
        }
        wake_.notify_all();
        for (auto& t : threads_) t.join();
    }

    unsigned workers() const { return cfg_.workers; }
    std::size_t chunk_size() const { return cfg_.chunk_size; }
    const executor_config& config() const { return cfg_; }

    /// One phase: body(i) for every i in [0, n).
    template <typename F>
    void run(std::size_t n, F&& body) const {
        run_ranges(n, [&body](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }

    /// Like run(), but for coarse items (chunk sorts, bucket merges) where
    /// even a handful of indices are worth distributing.
    template <typename F>
    void run_tasks(std::size_t n, F&& body) const {
        dispatch(n, [&body](std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) body(i);
        });
    }

    /// One phase: body(begin, end) once per contiguous slice of [0, n).
    template <typename F>
    void run_ranges(std::size_t n, F&& body) const {
        if (n <= kSerialGrain) {
            if (n) body(0, n);
            return;
        }
        dispatch(n, body);
    }

private:
    template <typename F>
    void dispatch(std::size_t n, F&& body) const {
        if (n == 0) return;
        if (threads_.empty() || n == 1) {
            body(0, n);
            return;
        }
        const unsigned parts =
            static_cast<unsigned>(std::min<std::size_t>(cfg_.workers, n));
        const std::size_t step = (n + parts - 1) / parts;
        auto slice = [&body, step, n](unsigned part) {
            const std::size_t begin = std::size_t{part} * step;
            const std::size_t end = std::min(n, begin + step);
            if (begin < end) body(begin, end);
        };
        {
            std::lock_guard<std::mutex> lock(mutex_);
            job_ = slice;
            parts_ = parts;
            pending_ = static_cast<unsigned>(threads_.size());
            ++epoch_;
        }
        wake_.notify_all();
        slice(0);
        std::unique_lock<std::mutex> lock(mutex_);
        done_.wait(lock, [this] { return pending_ == 0; });
        job_ = nullptr;
    }

    // Element phases below this size run inline; worker wakeups cost more
    // than the loop itself.
    static constexpr std::size_t kSerialGrain = 2048;

    void worker_loop(unsigned id) {
        std::uint64_t seen = 0;
        for (;;) {
            std::function<void(unsigned)> job;
            {
                std::unique_lock<std::mutex> lock(mutex_);
                wake_.wait(lock, [&] { return stop_ || epoch_ != seen; });
                if (stop_) return;
                seen = epoch_;
                if (id < parts_) job = job_;
            }
            if (job) job(id);
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (--pending_ == 0) done_.notify_one();
            }
        }
    }

    executor_config cfg_;
    std::vector<std::thread> threads_;
    mutable std::mutex mutex_;
    mutable std::condition_variable wake_;
    mutable std::condition_variable done_;
    mutable std::function<void(unsigned)> job_;
    mutable unsigned parts_ = 0;
    mutable unsigned pending_ = 0;
    mutable std::uint64_t epoch_ = 0;
    bool stop_ = false;
};

}  // namespace reseq
