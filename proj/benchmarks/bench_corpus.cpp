// Throughput of independent expansion sessions: serial loop vs the OpenMP
// batch runner.  Sessions are sequential internally; the parallelism is
// across sessions, matching the batch CLI.
#include <chrono>
#include <iostream>
#include <vector>

#include "gcf237/batch.hpp"

#ifdef GCF237_HAVE_OPENMP
#include <omp.h>
#endif

int main(int argc, char** argv) {
  int repeat = argc > 1 ? std::atoi(argv[1]) : 4;
  std::vector<std::string> base = {
      "--z theta --w 0 --sign - --max-digits 400",
      "--z (1-eta^2)*theta --w 1 --max-digits 400",
      "--z theta --w 1 --max-digits 400",
      "--z 2*theta --w theta --max-digits 400",
      "--z (1-eta^2)*theta --w 1 --beta -1 --max-digits 400",
      "--z 1+theta --w 1 --max-digits 400",
      "--z theta^3 --w 1+theta --max-digits 400",
      "--z 2+theta --w 1-theta --max-digits 400",
  };
  std::vector<std::string> lines;
  for (int r = 0; r < repeat; ++r) lines.insert(lines.end(), base.begin(), base.end());

  auto time_run = [&](int jobs) {
    auto t0 = std::chrono::steady_clock::now();
    auto out = gcf237::run_batch(lines, jobs);
    auto t1 = std::chrono::steady_clock::now();
    double sec = std::chrono::duration<double>(t1 - t0).count();
    size_t errors = 0;
    for (const auto& doc : out)
      if (doc.find("\"error\"") != std::string::npos) ++errors;
    return std::pair(sec, errors);
  };

  auto [serial_sec, serial_err] = time_run(1);
  std::cout << "serial   : " << lines.size() << " sessions in " << serial_sec << " s ("
            << serial_err << " errors)\n";
#ifdef GCF237_HAVE_OPENMP
  int jobs = omp_get_max_threads();
  auto [par_sec, par_err] = time_run(jobs);
  std::cout << "openmp x" << jobs << ": " << lines.size() << " sessions in " << par_sec
            << " s (" << par_err << " errors)\n";
  std::cout << "speedup  : " << serial_sec / par_sec << "\n";
  auto serial_out = gcf237::run_batch(lines, 1);
  auto par_out = gcf237::run_batch(lines, jobs);
  std::cout << "identical: " << (serial_out == par_out ? "yes" : "NO") << "\n";
  return serial_out == par_out ? 0 : 1;
#else
  std::cout << "openmp   : unavailable\n";
  return 0;
#endif
}
