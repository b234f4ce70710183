#ifndef PNLOGIC_PNLOGIC_HPP
#define PNLOGIC_PNLOGIC_HPP

#include "pnlogic/conditions.hpp"
#include "pnlogic/fixtures.hpp"
#include "pnlogic/formula.hpp"
#include "pnlogic/frame.hpp"
#include "pnlogic/io.hpp"
#include "pnlogic/proof.hpp"
#include "pnlogic/replication.hpp"
#include "pnlogic/search.hpp"
#include "pnlogic/semantics.hpp"
#include "pnlogic/syntax.hpp"
#include "pnlogic/world_set.hpp"

#endif  // PNLOGIC_PNLOGIC_HPP
