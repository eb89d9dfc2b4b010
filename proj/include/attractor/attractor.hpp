#ifndef ATTRACTOR_ATTRACTOR_HPP
#define ATTRACTOR_ATTRACTOR_HPP

// Umbrella header.

#include "attractor/adag.hpp"
#include "attractor/bounds.hpp"
#include "attractor/bwt.hpp"
#include "attractor/common.hpp"
#include "attractor/derive.hpp"
#include "attractor/grammar.hpp"
#include "attractor/labeled_tree.hpp"
#include "attractor/lz77.hpp"
#include "attractor/macro.hpp"
#include "attractor/report.hpp"
#include "attractor/stree.hpp"
#include "attractor/suffix_index.hpp"
#include "attractor/text.hpp"
#include "attractor/treeattr.hpp"
#include "attractor/verify.hpp"

#endif
