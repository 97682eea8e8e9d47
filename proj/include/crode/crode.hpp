#pragma once

#include "branch.hpp"
#include "closed_form.hpp"
#include "complex.hpp"
#include "complexify.hpp"
#include "cr_structure.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "integrator.hpp"
#include "kinetics.hpp"
#include "multivar.hpp"
#include "polynomial.hpp"
#include "rational.hpp"
#include "reaction_text.hpp"
#include "roots.hpp"
#include "surd.hpp"
#include "system_io.hpp"
#include "verification.hpp"
