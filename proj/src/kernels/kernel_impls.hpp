#pragma once

#include "marelay/kernels.hpp"

namespace marelay::kernels::detail {

extern const KernelTable kScalarTable;
#if defined(MARELAY_HAVE_AVX2_TU)
extern const KernelTable kAvx2Table;
#endif
#if defined(MARELAY_HAVE_NEON_TU)
extern const KernelTable kNeonTable;
#endif

}  // namespace marelay::kernels::detail
