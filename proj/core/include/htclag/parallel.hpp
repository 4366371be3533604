#pragma once

#include <condition_variable>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace htclag {

/// Persistent worker pool for the gather/scatter phases. Work is split into
/// contiguous index ranges with disjoint writes, so results are bitwise
/// independent of the thread count.
class ThreadPool {
public:
    explicit ThreadPool(int threads = 1) { reset(threads); }
    ~ThreadPool() { stop(); }

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    void reset(int threads) {
        stop();
        n_ = threads < 1 ? 1 : threads;
        if (n_ == 1) return;
        done_.assign(n_ - 1, true);
        running_ = true;
        for (int i = 0; i < n_ - 1; ++i)
            workers_.emplace_back([this, i] { worker_loop(i); });
    }

    int threads() const { return n_; }

    /// Run fn(begin, end) over [0, n) split into one chunk per thread.
    void run(int n, const std::function<void(int, int)>& fn) {
        if (n_ == 1 || n < 2 * n_) {
            fn(0, n);
            return;
        }
        const int chunk = (n + n_ - 1) / n_;
        {
            std::unique_lock<std::mutex> lk(mtx_);
            job_ = &fn;
            job_n_ = n;
            job_chunk_ = chunk;
            for (auto&& d : done_) d = false;
            ++epoch_;
        }
        cv_.notify_all();
        fn(0, std::min(chunk, n)); // this thread takes the first chunk
        std::unique_lock<std::mutex> lk(mtx_);
        cv_done_.wait(lk, [this] {
            for (const auto& d : done_)
                if (!d) return false;
            return true;
        });
        job_ = nullptr;
    }

private:
    void worker_loop(int id) {
        std::uint64_t seen = 0;
        for (;;) {
            const std::function<void(int, int)>* job = nullptr;
            int begin = 0, end = 0;
            {
                std::unique_lock<std::mutex> lk(mtx_);
                cv_.wait(lk, [this, &seen] { return !running_ || epoch_ != seen; });
                if (!running_) return;
                seen = epoch_;
                job = job_;
                begin = (id + 1) * job_chunk_;
                end = std::min(begin + job_chunk_, job_n_);
            }
            if (job && begin < end) (*job)(begin, end);
            {
                std::unique_lock<std::mutex> lk(mtx_);
                done_[id] = true;
            }
            cv_done_.notify_one();
        }
    }

    void stop() {
        if (!workers_.empty()) {
            {
                std::unique_lock<std::mutex> lk(mtx_);
                running_ = false;
            }
            cv_.notify_all();
            for (auto& w : workers_) w.join();
            workers_.clear();
        }
    }

    int n_ = 1;
    bool running_ = false;
    std::vector<std::thread> workers_;
    std::vector<char> done_;
    std::mutex mtx_;
    std::condition_variable cv_, cv_done_;
    const std::function<void(int, int)>* job_ = nullptr;
    int job_n_ = 0, job_chunk_ = 0;
    std::uint64_t epoch_ = 0;
};

} // namespace htclag
