#ifndef DELAYLAB_DELAYLAB_HPP
#define DELAYLAB_DELAYLAB_HPP

#include "delaylab/asymptotics.hpp"
#include "delaylab/charpoly.hpp"
#include "delaylab/dde.hpp"
#include "delaylab/detail.hpp"
#include "delaylab/hashing.hpp"
#include "delaylab/scaling.hpp"
#include "delaylab/spectrum.hpp"
#include "delaylab/twoscale.hpp"
#include "delaylab/validation.hpp"

#endif
