package com.acme.shop;

public class CustomerService {
    private final Map<Long, Customer> store = new HashMap<>();
    private long nextId = 1;

    public Customer create(Customer item) {
        long id = nextId++;
        store.put(id, item);
        return item;
    }

    public Optional<Customer> find(long id) {
        return Optional.ofNullable(store.get(id));
    }

    public List<Customer> findAll(Predicate<? super Customer> filter) {
        return store.values().stream()
                .filter(filter)
                .collect(Collectors.toList());
    }

    public boolean delete(long id) {
        if (!store.containsKey(id)) {
            return false;
        }
        store.remove(id);
        return true;
    }

    // TODO: paging
    public int count() { return store.size(); }

    static final class Stats {
        int reads;
        int writes;

        double ratio() {
            return writes == 0 ? 0 : (double) reads / writes;
        }
    }
}
