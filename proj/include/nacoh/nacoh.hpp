#pragma once

#include "nacoh/action.hpp"
#include "nacoh/automorphism.hpp"
#include "nacoh/catalog.hpp"
#include "nacoh/check.hpp"
#include "nacoh/cohomology.hpp"
#include "nacoh/coset_enumeration.hpp"
#include "nacoh/crossed_module.hpp"
#include "nacoh/derivation.hpp"
#include "nacoh/describe.hpp"
#include "nacoh/error.hpp"
#include "nacoh/group.hpp"
#include "nacoh/instance.hpp"
#include "nacoh/integer_matrix.hpp"
#include "nacoh/lattice.hpp"
#include "nacoh/run.hpp"
#include "nacoh/union_find.hpp"
