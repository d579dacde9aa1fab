#pragma once

#include "qbmg/autgroup.hpp"
#include "qbmg/axioms.hpp"
#include "qbmg/constructions.hpp"
#include "qbmg/digraph.hpp"
#include "qbmg/error.hpp"
#include "qbmg/io.hpp"
#include "qbmg/orientations.hpp"
#include "qbmg/partition.hpp"
#include "qbmg/permutation.hpp"
#include "qbmg/quotients.hpp"
#include "qbmg/undirected.hpp"
#include "qbmg/verify.hpp"
#include "qbmg/vertex.hpp"
