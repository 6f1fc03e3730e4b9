#pragma once

#include "dsfa/kernels.hpp"

namespace dsfa::kernels::detail {

#if defined(DSFA_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(DSFA_HAVE_NEON)
const KernelTable& neon_table() noexcept;
#endif

}  // namespace dsfa::kernels::detail
