//! Data-parallel iteration. With the `parallel` feature this is rayon; without
//! it, the same method names resolve to plain sequential iterators so call
//! sites compile unchanged.

#[cfg(feature = "parallel")]
pub use rayon::prelude::*;

#[cfg(not(feature = "parallel"))]
pub use self::sequential::*;

#[cfg(not(feature = "parallel"))]
mod sequential {
    pub trait IntoParallelIterator {
        type Item;
        type Iter: Iterator<Item = Self::Item>;

        fn into_par_iter(self) -> Self::Iter;
    }

    impl<T: IntoIterator> IntoParallelIterator for T {
        type Item = T::Item;
        type Iter = T::IntoIter;

        fn into_par_iter(self) -> Self::Iter {
            self.into_iter()
        }
    }

    pub trait IntoParallelRefIterator<'data> {
        type Item: 'data;
        type Iter: Iterator<Item = Self::Item>;

        fn par_iter(&'data self) -> Self::Iter;
    }

    impl<'data, I: 'data + ?Sized> IntoParallelRefIterator<'data> for I
    where
        &'data I: IntoIterator,
    {
        type Item = <&'data I as IntoIterator>::Item;
        type Iter = <&'data I as IntoIterator>::IntoIter;

        fn par_iter(&'data self) -> Self::Iter {
            self.into_iter()
        }
    }

    /// rayon-only adaptor names mapped onto `Iterator`.
    pub trait ParallelIterator: Iterator + Sized {
        fn find_map_first<R, F>(mut self, f: F) -> Option<R>
        where
            F: FnMut(Self::Item) -> Option<R>,
        {
            self.find_map(f)
        }

        fn find_first<P>(mut self, p: P) -> Option<Self::Item>
        where
            P: FnMut(&Self::Item) -> bool,
        {
            self.find(p)
        }

        fn with_min_len(self, _min: usize) -> Self {
            self
        }
    }

    impl<I: Iterator> ParallelIterator for I {}
}

/// Whether this build evaluates batch work on the rayon pool.
pub const PARALLEL: bool = cfg!(feature = "parallel");
