#include "divcurl/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace divcurl::detail {

namespace {

// FFTW planning is not thread-safe; plans are created once per (dim, n,
// sign) under a lock and executed with the new-array interface, which is
// safe concurrently. FFTW_UNALIGNED so any heap buffer qualifies.
class PlanCache {
  public:
    fftw_plan get(int dim, int n, int sign) {
        std::scoped_lock lock(mutex_);
        auto key = std::make_tuple(dim, n, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::int64_t total = 1;
        for (int a = 0; a < dim; ++a) total *= n;
        fftw_complex* buf_in = fftw_alloc_complex(static_cast<std::size_t>(total));
        fftw_complex* buf_out = fftw_alloc_complex(static_cast<std::size_t>(total));
        int dims[3] = {n, n, n};
        fftw_plan plan = fftw_plan_dft(dim, dims, buf_in, buf_out, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf_in);
        fftw_free(buf_out);
        plans_[key] = plan;
        return plan;
    }

  private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void dft_forward(const TorusGrid& grid, const std::vector<double>& phys,
                 std::vector<Cplx>& spec) {
    const std::size_t total = static_cast<std::size_t>(grid.total());
    std::vector<Cplx> in(total);
    for (std::size_t j = 0; j < total; ++j) in[j] = Cplx(phys[j], 0.0);
    spec.resize(total);

    fftw_plan plan = cache().get(grid.dim, grid.n, FFTW_FORWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(spec.data()));

    const double norm = 1.0 / static_cast<double>(grid.total());
    for (std::size_t j = 0; j < total; ++j) spec[j] *= norm;
}

void dft_inverse(const TorusGrid& grid, const std::vector<Cplx>& spec,
                 std::vector<double>& phys) {
    const std::size_t total = static_cast<std::size_t>(grid.total());
    std::vector<Cplx> in(spec);
    std::vector<Cplx> out(total);

    fftw_plan plan = cache().get(grid.dim, grid.n, FFTW_BACKWARD);
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));

    phys.resize(total);
    for (std::size_t j = 0; j < total; ++j) phys[j] = out[j].real();
}

}  // namespace divcurl::detail
