// Copyright 2026 The finpipe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace finpipe::cli {

// Fixed set of threads running index-parallel loops. Results are written by
// index, so output order never depends on scheduling.
class WorkerPool {
 public:
  explicit WorkerPool(std::size_t workers);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  std::size_t size() const { return workers_; }

  // Calls fn(i) for every i in [0, n) and waits. If any call throws, the
  // exception of the lowest failing index is rethrown.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

 private:
  void work();
  void run_chunks();

  std::size_t workers_;
  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  bool stop_ = false;
  std::size_t generation_ = 0;
  std::size_t active_ = 0;

  // Current job.
  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::size_t n_ = 0;
  std::size_t next_ = 0;
  std::size_t error_index_ = 0;
  std::exception_ptr error_;
};

// FINPIPE_WORKERS when set, otherwise the hardware concurrency.
std::size_t default_workers();

}  // namespace finpipe::cli
