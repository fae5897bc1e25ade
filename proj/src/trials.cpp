#include "ratmaps/trials.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace ratmaps {

void run_trials(std::size_t trials, std::uint64_t seed, unsigned jobs,
                const std::function<void(std::size_t, std::mt19937_64&)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(trials, 1))));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= trials) return;
      try {
        std::mt19937_64 rng(trial_seed(seed, t));
        body(t, rng);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

mpq_class random_rational(std::mt19937_64& rng, long magnitude) {
  std::uniform_int_distribution<long> num(-magnitude, magnitude);
  std::uniform_int_distribution<long> den(1, magnitude);
  mpq_class out(num(rng), den(rng));
  out.canonicalize();
  return out;
}

GaussianRational random_gaussian_rational(std::mt19937_64& rng, long magnitude) {
  mpq_class re = random_rational(rng, magnitude);
  return {re, random_rational(rng, magnitude)};
}

}  // namespace ratmaps
