public class BeanSerializer {

    public boolean handles(Object value, Class expectedType) {
        if (value == null) {
            return false;
        }
        Class value_class = value.getClass();
        return value_class.equals(expectedType);
    }
}
