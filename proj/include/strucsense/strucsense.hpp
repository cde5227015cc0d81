#ifndef STRUCSENSE_STRUCSENSE_HPP_
#define STRUCSENSE_STRUCSENSE_HPP_

#include "bench.hpp"
#include "dot.hpp"
#include "error.hpp"
#include "forcing.hpp"
#include "model.hpp"
#include "netgraph.hpp"
#include "oracle.hpp"
#include "pattern.hpp"
#include "placement.hpp"
#include "spanning.hpp"
#include "wdn.hpp"

#endif
