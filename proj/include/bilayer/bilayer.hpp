#pragma once
// Convenience include for the whole library.

#include "bilayer/baselines.hpp"
#include "bilayer/community.hpp"
#include "bilayer/diffusion.hpp"
#include "bilayer/evaluation.hpp"
#include "bilayer/io.hpp"
#include "bilayer/network.hpp"
#include "bilayer/parallel.hpp"
#include "bilayer/record.hpp"
#include "bilayer/selfcheck.hpp"
#include "bilayer/synth.hpp"
