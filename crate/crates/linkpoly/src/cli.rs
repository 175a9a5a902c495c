pub struct Placeholder3;
