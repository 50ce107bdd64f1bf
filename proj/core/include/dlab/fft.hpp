#pragma once

#include <string>

#include "dlab/aligned.hpp"
#include "dlab/domain.hpp"

namespace dlab {

// Unnormalised multi-dimensional DFTs over the DomainSpec grid. Plans are
// cached per (shape, direction, in-place) and shared between threads; all
// buffers must come from AlignedAllocator.
void dft_forward(const DomainSpec& spec, const cplx* in, cplx* out);
void dft_backward(const DomainSpec& spec, const cplx* in, cplx* out);

std::string fft_backend_version();

}  // namespace dlab
