#include "dlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace dlab {
namespace {

using Key = std::tuple<std::vector<int>, int, bool>;

struct PlanCache {
  std::mutex mu;
  std::map<Key, fftw_plan> plans;

  ~PlanCache() {
    for (auto& [k, p] : plans) fftw_destroy_plan(p);
  }

  fftw_plan get(const std::vector<int>& shape, int sign, bool inplace) {
    std::lock_guard<std::mutex> lock(mu);
    Key key{shape, sign, inplace};
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;
    std::size_t total = 1;
    for (int s : shape) total *= static_cast<std::size_t>(s);
    CVec a(total), b(total);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = inplace ? pa : reinterpret_cast<fftw_complex*>(b.data());
    fftw_plan p = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), pa, pb, sign,
                                FFTW_ESTIMATE);
    plans.emplace(std::move(key), p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(const DomainSpec& spec, const cplx* in, cplx* out, int sign) {
  fftw_plan p = cache().get(spec.grid, sign, in == out);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

}  // namespace

void dft_forward(const DomainSpec& spec, const cplx* in, cplx* out) {
  run(spec, in, out, FFTW_FORWARD);
}

void dft_backward(const DomainSpec& spec, const cplx* in, cplx* out) {
  run(spec, in, out, FFTW_BACKWARD);
}

}  // namespace dlab

namespace dlab {

std::string fft_backend_version() { return fftw_version; }

}  // namespace dlab
