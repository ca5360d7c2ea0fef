#ifndef HARMEX_HARMEX_HPP
#define HARMEX_HARMEX_HPP

#include "harmex/conditioning.hpp"
#include "harmex/error.hpp"
#include "harmex/excitation.hpp"
#include "harmex/fft.hpp"
#include "harmex/io/f0_file.hpp"
#include "harmex/io/tensor_file.hpp"
#include "harmex/io/wav.hpp"
#include "harmex/ltv.hpp"
#include "harmex/metrics.hpp"
#include "harmex/min_phase.hpp"
#include "harmex/pitch.hpp"
#include "harmex/spectral.hpp"
#include "harmex/synth.hpp"
#include "harmex/types.hpp"

#endif  // HARMEX_HARMEX_HPP
