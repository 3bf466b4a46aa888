#pragma once

#include "pbtlab/closed_form.hpp"
#include "pbtlab/ensemble.hpp"
#include "pbtlab/fidelity.hpp"
#include "pbtlab/linops.hpp"
#include "pbtlab/povm.hpp"
#include "pbtlab/spin_boson.hpp"
