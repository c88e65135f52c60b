#pragma once

#include "entgen/beam_splitter.hpp"
#include "entgen/cascade.hpp"
#include "entgen/closed_form.hpp"
#include "entgen/entanglement.hpp"
#include "entgen/errors.hpp"
#include "entgen/fock.hpp"
#include "entgen/herald.hpp"
#include "entgen/report.hpp"
#include "entgen/search.hpp"
#include "entgen/serialize.hpp"
