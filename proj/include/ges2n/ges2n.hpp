#ifndef GES2N_GES2N_HPP
#define GES2N_GES2N_HPP

// Umbrella header for the GES2N optimal filter design library.
//
// Pipeline: a vibration record is FIR-filtered with L2-normalized
// coefficients, its squared envelope spectrum is taken on a cyclic-order grid
// via the velocity-synchronous DFT, and the ratio of weighted fault-band
// amplitudes to a noise reference (psi) is maximized over the coefficients by
// conjugate gradient descent on -ln psi with an analytical gradient.

#include "ges2n/signal_model.hpp"
#include "ges2n/vs_spectrum.hpp"
#include "ges2n/objective.hpp"
#include "ges2n/gradient.hpp"
#include "ges2n/lpc.hpp"
#include "ges2n/optimizer.hpp"
#include "ges2n/metrics.hpp"
#include "ges2n/synth.hpp"
#include "ges2n/io.hpp"
#include "ges2n/log.hpp"

#endif  // GES2N_GES2N_HPP
