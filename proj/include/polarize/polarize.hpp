#pragma once

// Umbrella header for the polarize library: involutive algebras given by
// structure constants, finite unitary groups and their Haar moments, the
// generalized polarization identity and the Jordan-von Neumann
// reconstruction of Hermitian forms from quadrances.

#include "polarize/algebra.hpp"
#include "polarize/constructors.hpp"
#include "polarize/errors.hpp"
#include "polarize/forms.hpp"
#include "polarize/group_table.hpp"
#include "polarize/io.hpp"
#include "polarize/linalg.hpp"
#include "polarize/moments.hpp"
#include "polarize/report.hpp"
#include "polarize/rng.hpp"
#include "polarize/scalar.hpp"
#include "polarize/spec_parse.hpp"
#include "polarize/unitary_group.hpp"
#include "polarize/version.hpp"
