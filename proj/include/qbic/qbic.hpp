#pragma once

// Umbrella header.

#include "qbic/error.hpp"
#include "qbic/gf.hpp"
#include "qbic/linalg.hpp"
#include "qbic/forms.hpp"
#include "qbic/hermitian.hpp"
#include "qbic/geometry.hpp"
#include "qbic/fano.hpp"
#include "qbic/formulas.hpp"
#include "qbic/io.hpp"
#include "qbic/builtins.hpp"
#include "qbic/suite.hpp"
